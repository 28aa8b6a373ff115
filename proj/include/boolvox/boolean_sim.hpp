// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "boolvox/expansion_tables.hpp"
#include "boolvox/lattice_configs.hpp"
#include "boolvox/types.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace boolvox {

struct Ball {
    Vector3d center;
    double radius = 0;
};

/// Closed-ball membership; digitization and point queries share this predicate.
inline bool covers(const Ball& ball, const Vector3d& x) {
    return (x - ball.center).squaredNorm() <= ball.radius * ball.radius;
}

/// Boolean model of balls observed in [0, L]^3. Centers are sampled in the box dilated by
/// r_max so the restriction to the window has the stationary law. Immutable after sampling.
class Realization {
  public:
    Realization(std::vector<Ball> balls, double window, double margin);

    std::span<const Ball> balls() const { return balls_; }
    double window() const { return window_; }
    double margin() const { return margin_; }

    /// True iff some ball covers x. Points outside the dilated box are never covered.
    bool contains(const Vector3d& x) const;
    bool contains_naive(const Vector3d& x) const;

  private:
    int cell_index(int ix, int iy, int iz) const { return (iz * cells_ + iy) * cells_ + ix; }
    int cell_coord(double t) const;

    std::vector<Ball> balls_;
    double window_;
    double margin_;
    double cell_size_;
    int cells_ = 0;
    std::vector<int> cell_start_;
    std::vector<int> cell_items_;
};

Realization sample_realization(const BallModelParams& params, double window, std::uint64_t seed,
                               std::uint64_t stream = 0);

struct McEstimate {
    double value = 0;
    double std_error = 0;
};

struct HitMissOptions {
    /// Translation applied to the window anchor x_0.
    Vector3d offset = Vector3d::Zero();
    /// Evaluate the configuration g(mask) in place of mask (vertex relabeling).
    std::optional<VertexPermutation> symmetry;
};

/// Counts of all 256 configurations over independent local realizations around one window.
struct MaskHistogram {
    std::array<std::uint64_t, kNumMasks> counts{};
    std::uint64_t replications = 0;

    /// Frequency and binomial standard error of one configuration.
    McEstimate mask(ConfigMask m) const;
    /// Mean frequency per configuration of class j, i.e. N_j / (n D_jj).
    McEstimate class_mean(ClassId j) const;
    /// Frequency of windows whose white set contains S.
    McEstimate white_superset(VertexSet s) const;
};

MaskHistogram hit_miss_histogram(const BallModelParams& params, double a, std::uint64_t replications,
                                 std::uint64_t seed, const HitMissOptions& options = {});

/// Monte-Carlo estimate of P(a B_j in Z, a W_j in Z^c) for one configuration of class j.
McEstimate hit_miss_mc(ClassId j, const BallModelParams& params, double a, std::uint64_t replications,
                       std::uint64_t seed);

/// P(aS in Z^c) = exp(-gamma E V_3(rB + a(-S))), volume by Monte Carlo.
McEstimate miss_probability_oracle(VertexSet s, const BallModelParams& params, double a, std::uint64_t n_samples,
                                   std::uint64_t seed);

/// Mean E V_3(rB + a(-S)) used by miss_probability_oracle.
McEstimate dilated_volume_mc(VertexSet s, const BallModelParams& params, double a, std::uint64_t n_samples,
                             std::uint64_t seed);

}  // namespace boolvox
