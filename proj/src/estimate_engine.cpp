// SPDX-License-Identifier: Apache-2.0
#include "boolvox/estimate_engine.hpp"

#include "boolvox/errors.hpp"
#include "boolvox/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace boolvox {

double estimate(const ConfigHistogram& hist, const WeightVector& w, double a, int q) {
    if (q < 0 || q > 3) throw ConfigError("q must be in 0..3");
    if (q != w.q) throw ConfigError("weight vector is for a different q");
    if (!(a > 0)) throw ConfigError("grid width must be positive");
    const std::uint64_t total = hist.window_total();
    if (total == 0) throw ConfigError("no complete 2x2x2 window in the grid");
    const double n = static_cast<double>(total);
    if (q == 3) {
        return (w(kNumClassesWithEmpty) * static_cast<double>(hist.black_anchors()) +
                w(1) * static_cast<double>(hist.white_anchors())) /
               n;
    }
    const auto counts = hist.class_counts();
    double sum = 0;
    for (ClassId j = 1; j <= kNumClassesWithEmpty; ++j) sum += w(j) * static_cast<double>(counts[j - 1]);
    return std::pow(a, q - 3) * sum / n;
}

const ExperimentRow& ExperimentReport::row(const std::string& name, double a) const {
    for (const auto& r : rows) {
        if (r.name == name && r.a == a) return r;
    }
    throw std::out_of_range("no experiment row for " + name);
}

std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3) return std::nullopt;
    Eigen::MatrixXd design(static_cast<Eigen::Index>(x.size()), 2);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0) || !(y[i] > 0)) return std::nullopt;
        design(static_cast<Eigen::Index>(i), 0) = 1.0;
        design(static_cast<Eigen::Index>(i), 1) = std::log(x[i]);
        rhs(static_cast<Eigen::Index>(i)) = std::log(y[i]);
    }
    const Eigen::Vector2d fit = design.colPivHouseholderQr().solve(rhs);
    return fit(1);
}

ExperimentReport run_experiment(const BallModelParams& params, const std::vector<NamedWeights>& weight_sets,
                                const ExperimentConfig& config) {
    if (config.replications < 2) throw ConfigError("replications must be >= 2");
    if (config.grid_widths.empty()) throw ConfigError("need at least one grid width");
    if (weight_sets.empty()) throw ConfigError("need at least one weight set");
    for (double a : config.grid_widths) lattice_steps(config.window, a);

    const auto miles = miles_values(params);
    const int reps = config.replications;
    const std::size_t sets = weight_sets.size();
    ExperimentReport report;
    std::vector<std::vector<double>> biases(sets);

    for (std::size_t ai = 0; ai < config.grid_widths.size(); ++ai) {
        const double a = config.grid_widths[ai];
        const std::uint64_t seed = derive_seed(config.seed, ai);
        std::vector<double> values(static_cast<std::size_t>(reps) * sets);
#pragma omp parallel for schedule(dynamic)
        for (int rep = 0; rep < reps; ++rep) {
            const Realization real = sample_realization(params, config.window, seed, static_cast<std::uint64_t>(rep));
            const ConfigHistogram hist = count_configurations(digitize(real, a));
            for (std::size_t s = 0; s < sets; ++s) {
                const auto& w = weight_sets[s].weights;
                values[static_cast<std::size_t>(rep) * sets + s] = estimate(hist, w, a, w.q);
            }
        }

        for (std::size_t s = 0; s < sets; ++s) {
            const auto& w = weight_sets[s].weights;
            double sum = 0, square = 0;
            for (int rep = 0; rep < reps; ++rep) sum += values[static_cast<std::size_t>(rep) * sets + s];
            const double mean = sum / reps;
            for (int rep = 0; rep < reps; ++rep) {
                const double d = values[static_cast<std::size_t>(rep) * sets + s] - mean;
                square += d * d;
            }
            ExperimentRow row;
            row.name = weight_sets[s].name;
            row.q = w.q;
            row.a = a;
            row.window = config.window;
            row.replications = reps;
            row.mean = mean;
            row.std_error = std::sqrt(square / (reps - 1) / reps);
            if (w.q == 3 || w(kNumClassesWithEmpty) == 0.0) row.predicted = predict_estimator_mean(w, params, a);
            row.miles = miles(w.q);
            row.abs_bias = std::abs(mean - row.miles);
            biases[s].push_back(row.abs_bias);
            report.rows.push_back(row);
        }
    }
    for (std::size_t s = 0; s < sets; ++s) {
        report.series.push_back({weight_sets[s].name, weight_sets[s].weights.q, loglog_slope(config.grid_widths, biases[s])});
    }
    return report;
}

}  // namespace boolvox
