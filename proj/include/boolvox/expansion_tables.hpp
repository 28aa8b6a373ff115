// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "boolvox/lattice_configs.hpp"
#include "boolvox/types.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

namespace boolvox {

/// Almost surely bounded radius distribution of the typical ball grain.
class RadiusLaw {
  public:
    enum class Kind { Constant, Uniform };

    static RadiusLaw constant(double r);
    static RadiusLaw uniform(double r_min, double r_max);
    /// "const:R" or "uniform:RMIN:RMAX".
    static RadiusLaw parse(std::string_view text);

    Kind kind() const { return kind_; }
    double min() const { return r_min_; }
    double max() const { return r_max_; }
    /// E r^k for k >= 1.
    double moment(int k) const;
    /// Inverse-CDF draw from a uniform variate u in [0, 1).
    double quantile(double u) const { return r_min_ + (r_max_ - r_min_) * u; }
    std::string to_string() const;

  private:
    RadiusLaw(Kind kind, double lo, double hi) : kind_(kind), r_min_(lo), r_max_(hi) {}

    Kind kind_;
    double r_min_;
    double r_max_;
};

/// Stationary Boolean model with ball grains.
struct BallModelParams {
    BallModelParams(double gamma, RadiusLaw radius);

    double gamma;
    RadiusLaw radius;

    double mean_r() const { return radius.moment(1); }
    double mean_r2() const { return radius.moment(2); }
    double mean_r3() const { return radius.moment(3); }
    /// E V_3 of the typical grain.
    double mean_volume() const { return 4.0 / 3.0 * std::numbers::pi * mean_r3(); }
    /// e^{-gamma E V_3(K)}, the probability that a point is not covered.
    double void_probability() const { return std::exp(-gamma * mean_volume()); }
};

/// Expansion basis v(a) for ball grains; its product with a Q row is the hit-and-miss
/// probability up to O(a^4).
template <typename Scalar>
ExpansionRow<Scalar> v_of_a(const BallModelParams& params, Scalar a) {
    using std::exp;
    const Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar g = params.gamma;
    const Scalar er = params.mean_r();
    const Scalar er2 = params.mean_r2();
    const Scalar ev3 = Scalar(4) / 3 * pi * Scalar(params.mean_r3());
    const Scalar void_p = exp(-g * ev3);
    ExpansionRow<Scalar> v;
    v << Scalar(1),
        void_p,
        -a * g * er2 * pi,
        -a * a * g * 2 * er,
        a * a * g * g * pi * pi * er2 * er2 / 2,
        -a * a * a * g,
        a * a * a * g * g * 2 * pi * er * er2,
        -a * a * a * g * g * g / 6 * pi * pi * pi * er2 * er2 * er2;
    v.template tail<6>() *= void_p;
    return v;
}

/// Miles formulas for ball grains; entry q is the specific intrinsic volume of order q.
template <typename Scalar = double>
Eigen::Matrix<Scalar, 4, 1> miles_values(const BallModelParams& params) {
    using std::exp;
    const Scalar pi = std::numbers::pi_v<Scalar>;
    const Scalar g = params.gamma;
    const Scalar ev1 = 4 * Scalar(params.mean_r());
    const Scalar ev2 = 2 * pi * Scalar(params.mean_r2());
    const Scalar ev3 = Scalar(4) / 3 * pi * Scalar(params.mean_r3());
    const Scalar void_p = exp(-g * ev3);
    Eigen::Matrix<Scalar, 4, 1> out;
    out(3) = 1 - void_p;
    out(2) = void_p * g * ev2;
    out(1) = void_p * (g * ev1 - g * g * pi / 8 * ev2 * ev2);
    out(0) = void_p * (g - g * g / 2 * ev2 * ev1 + g * g * g * pi / 48 * ev2 * ev2 * ev2);
    return out;
}

/// Target row b_q: the Miles value equals a^{q-3} v(a) b_q^T.
Row8d b_targets(int q);

struct CConstants {
    double c1 = 0;
    double c2 = 0;
    double c3 = 0;
};

/// P, Q = M P, and the all-black row, computed from the class table and cube geometry.
class ExpansionTables {
  public:
    static const ExpansionTables& instance();

    /// Rows P^1..P^21 (white-set geometry of each class representative).
    const ExpansionMatrix& p() const { return p_; }
    /// Q = M P.
    const ExpansionMatrix& q() const { return q_; }
    Row8d p_row(ClassId j) const;
    /// Q^j for j in 1..21; j = 22 gives the all-black configuration's row.
    Row8d q_row(ClassId j) const;
    /// D_jj as doubles, classes 1..21.
    const Eigen::Matrix<double, kNumClasses, 1>& multiplicities() const { return d_; }
    CConstants c_constants(ClassId j) const;

  private:
    ExpansionTables();

    ExpansionMatrix p_;
    ExpansionMatrix q_;
    Row8d q_all_black_;
    Eigen::Matrix<double, kNumClasses, 1> d_;
};

/// Geometry row (0, 1, V1, V2, V1^2, V3 - pi V1^(3), V1 V2, V1^3) of a white set.
Row8d geometry_row(VertexSet white);

Row8d p_row(ClassId j);
ExpansionMatrix q_matrix();
CConstants c_constants(ClassId j);

/// Q^j v(a)^T. Throws ExpansionRangeError when the truncation leaves [0, 1].
double predict_hit_miss(ClassId j, const BallModelParams& params, double a);

}  // namespace boolvox
