// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "boolvox/boolean_sim.hpp"
#include "boolvox/lattice_configs.hpp"
#include "boolvox/types.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace boolvox {

/// Binary image on the lattice a Z^3 intersected with a box. Bit-packed along x (x fastest);
/// each (y, z) row starts on a word boundary and padding bits are zero.
class VoxelGrid {
  public:
    VoxelGrid(int nx, int ny, int nz, double a = 1.0, Vector3d origin = Vector3d::Zero());

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int nz() const { return nz_; }
    double spacing() const { return a_; }
    const Vector3d& origin() const { return origin_; }
    int words_per_row() const { return words_per_row_; }

    bool get(int i, int j, int k) const { return (row(j, k)[i >> 6] >> (i & 63)) & 1u; }
    void set(int i, int j, int k, bool value = true);
    /// Sets bits i0..i1 (inclusive) of row (j, k).
    void set_range(int i0, int i1, int j, int k);
    void fill(bool value);

    std::span<const std::uint64_t> row(int j, int k) const {
        return {words_.data() + row_offset(j, k), static_cast<std::size_t>(words_per_row_)};
    }
    std::span<std::uint64_t> row(int j, int k) {
        return {words_.data() + row_offset(j, k), static_cast<std::size_t>(words_per_row_)};
    }

    /// Lattice point (i, j, k) in space.
    Vector3d point(int i, int j, int k) const {
        return origin_ + Vector3d(static_cast<double>(i) * a_, static_cast<double>(j) * a_, static_cast<double>(k) * a_);
    }

    std::uint64_t count_ones() const;
    friend bool operator==(const VoxelGrid& x, const VoxelGrid& y) {
        return x.nx_ == y.nx_ && x.ny_ == y.ny_ && x.nz_ == y.nz_ && x.words_ == y.words_;
    }

  private:
    std::size_t row_offset(int j, int k) const {
        return (static_cast<std::size_t>(k) * ny_ + j) * static_cast<std::size_t>(words_per_row_);
    }

    int nx_, ny_, nz_;
    double a_;
    Vector3d origin_;
    int words_per_row_;
    std::vector<std::uint64_t> words_;
};

/// Number of lattice steps n = L / a; throws ConfigError unless it is a positive integer.
int lattice_steps(double window, double a);

/// Occupancy of the lattice points (i a, j a, k a), 0 <= i, j, k <= L / a.
VoxelGrid digitize(const Realization& real, double a);
/// Same result by one contains() query per lattice point.
VoxelGrid digitize_naive(const Realization& real, double a);

/// Occurrences of each 2x2x2 configuration over the windows lying entirely in the grid.
struct ConfigHistogram {
    std::array<std::uint64_t, kNumMasks> mask_counts{};

    std::uint64_t window_total() const;
    /// N_j for j in 1..22; class 22 is the all-black count.
    std::uint64_t class_count(ClassId j) const;
    std::array<std::uint64_t, kNumClassesWithEmpty> class_counts() const;
    std::uint64_t all_black() const { return mask_counts[0xFF]; }
    /// Windows whose anchor vertex x_0 is foreground / background.
    std::uint64_t black_anchors() const;
    std::uint64_t white_anchors() const { return window_total() - black_anchors(); }

    ConfigHistogram& operator+=(const ConfigHistogram& other);
    friend bool operator==(const ConfigHistogram&, const ConfigHistogram&) = default;
};

/// Word-parallel counting kernel.
ConfigHistogram count_configurations(const VoxelGrid& grid);
/// Reference implementation: one window at a time.
ConfigHistogram count_configurations_naive(const VoxelGrid& grid);

}  // namespace boolvox
