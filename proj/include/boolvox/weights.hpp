// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "boolvox/expansion_tables.hpp"
#include "boolvox/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace boolvox {

/// Per-class weights of a local estimator for the specific intrinsic volume of order q.
/// Entry j-1 holds the weight of class j (1..22).
struct WeightVector {
    int q = 0;
    Eigen::Matrix<double, kNumClassesWithEmpty, 1> w = Eigen::Matrix<double, kNumClassesWithEmpty, 1>::Zero();

    double operator()(ClassId j) const { return w(j - 1); }
    double& operator()(ClassId j) { return w(j - 1); }

    static WeightVector zeros(int q);
    /// Lattice-point counting: w_22 = 1 applied to foreground window anchors.
    static WeightVector volume();

    friend bool operator==(const WeightVector& a, const WeightVector& b) { return a.q == b.q && a.w == b.w; }
};

/// Row vector w D Q over classes 1..21, plus w_22 times the all-black row.
/// For q = 3 the row of the point-counting estimator (w_22 on foreground anchors, w_1 on
/// background anchors).
Row8d wdq_row(const WeightVector& w);

/// w D Q - b_q.
Row8d verify_weights(const WeightVector& w);

/// Minimum-norm weights with w D Q = target on columns 3..8, w_1 = w_22 = 0 and
/// zero weight outside `support` (all classes when empty). Throws InfeasibleError when
/// the best residual exceeds `tolerance`.
WeightVector solve_for_target(int q, const Row8d& target, const std::optional<std::vector<ClassId>>& support = {},
                              double tolerance = 1e-10);

/// solve_for_target with target b_q, q in 0..2.
WeightVector solve_weights(int q, const std::optional<std::vector<ClassId>>& support = {});

/// Basis (columns, 22 rows) of weights h with h D Q = 0 on the support, h_1 = h_22 = 0.
Eigen::MatrixXd homogeneous_solutions(const std::optional<std::vector<ClassId>>& support = {});

/// Expected value of the estimator: a^{q-3} w D Q v(a)^T for q < 3; for q = 3 the exact
/// point-counting mean.
double predict_estimator_mean(const WeightVector& w, const BallModelParams& params, double a);

/// Text format: `class_id,weight` per line, classes 1..22 each exactly once, '#' comments.
WeightVector parse_weights(std::istream& in, int q);
void write_weights(std::ostream& out, const WeightVector& w);
WeightVector load_weights(const std::filesystem::path& path, int q);
void save_weights(const WeightVector& w, const std::filesystem::path& path);

}  // namespace boolvox
