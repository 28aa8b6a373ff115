// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "boolvox/boolean_sim.hpp"
#include "boolvox/voxel_grid.hpp"
#include "boolvox/weights.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace boolvox {

/// a^{q-3} sum_j w_j N_j / N(A); for q = 3 the fraction of foreground window anchors weighted
/// by w_22 (and w_1 for background anchors).
double estimate(const ConfigHistogram& hist, const WeightVector& w, double a, int q);

struct NamedWeights {
    std::string name;
    WeightVector weights;
};

struct ExperimentConfig {
    double window = 16;
    std::vector<double> grid_widths;
    int replications = 32;
    std::uint64_t seed = 1;
};

struct ExperimentRow {
    std::string name;
    int q = 0;
    double a = 0;
    double window = 0;
    int replications = 0;
    double mean = 0;
    double std_error = 0;
    /// Expansion prediction; empty when the expansion does not apply.
    std::optional<double> predicted;
    double miles = 0;
    double abs_bias = 0;
};

struct ExperimentSeries {
    std::string name;
    int q = 0;
    /// Least-squares slope of log|bias| against log a; empty with fewer than 3 widths.
    std::optional<double> order;
};

struct ExperimentReport {
    std::vector<ExperimentRow> rows;
    std::vector<ExperimentSeries> series;

    const ExperimentRow& row(const std::string& name, double a) const;
};

/// Every weight set is evaluated on the same realizations; each grid width gets its own
/// replications, keyed by (seed, width index, replication).
ExperimentReport run_experiment(const BallModelParams& params, const std::vector<NamedWeights>& weight_sets,
                                const ExperimentConfig& config);

/// Slope of log y against log x; requires at least 3 points with y > 0.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace boolvox
