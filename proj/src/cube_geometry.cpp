// SPDX-License-Identifier: Apache-2.0
#include "boolvox/cube_geometry.hpp"

#include "boolvox/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace boolvox {

double support_function(VertexSet set, const Vector3d& u) {
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 8; ++i) {
        if (set.contains(i)) best = std::max(best, VertexSet::vertex(i).cast<double>().dot(u));
    }
    return best;
}

namespace {

struct DeficitIntegrand {
    std::vector<Vector3d> black;
    std::vector<Vector3d> white;

    double operator()(const Vector3d& u) const {
        double lowest_white = std::numeric_limits<double>::infinity();
        for (const auto& w : white) lowest_white = std::min(lowest_white, w.dot(u));
        double highest_black = -std::numeric_limits<double>::infinity();
        for (const auto& b : black) highest_black = std::max(highest_black, b.dot(u));
        return std::max(0.0, lowest_white - highest_black);
    }
};

// Solid angle of the spherical triangle (a, b, c), all unit vectors.
double spherical_area(const Vector3d& a, const Vector3d& b, const Vector3d& c) {
    const double num = std::abs(a.dot(b.cross(c)));
    const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    return 2.0 * std::atan2(num, den);
}

double integrate_triangle(const DeficitIntegrand& f, const Vector3d& a, const Vector3d& b,
                          const Vector3d& c, int depth) {
    if (depth == 0) {
        const Vector3d centroid = (a + b + c).normalized();
        return f(centroid) * spherical_area(a, b, c);
    }
    const Vector3d ab = (a + b).normalized();
    const Vector3d bc = (b + c).normalized();
    const Vector3d ca = (c + a).normalized();
    return integrate_triangle(f, a, ab, ca, depth - 1) + integrate_triangle(f, ab, b, bc, depth - 1) +
           integrate_triangle(f, ca, bc, c, depth - 1) + integrate_triangle(f, ab, bc, ca, depth - 1);
}

double integrate_sphere(const DeficitIntegrand& f, int level) {
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::array<Vector3d, 12> v = {Vector3d(-1, t, 0), Vector3d(1, t, 0),  Vector3d(-1, -t, 0), Vector3d(1, -t, 0),
                                  Vector3d(0, -1, t), Vector3d(0, 1, t),  Vector3d(0, -1, -t), Vector3d(0, 1, -t),
                                  Vector3d(t, 0, -1), Vector3d(t, 0, 1),  Vector3d(-t, 0, -1), Vector3d(-t, 0, 1)};
    for (auto& p : v) p.normalize();
    static constexpr int faces[20][3] = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                         {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                         {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                         {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    double sum = 0.0;
    for (const auto& face : faces) sum += integrate_triangle(f, v[face[0]], v[face[1]], v[face[2]], level);
    return sum;
}

}  // namespace

QuadratureResult support_deficit_integral(VertexSet black, VertexSet white, const QuadratureOptions& options) {
    if (black.empty() || white.empty() || (black.bits() & white.bits()) != 0) {
        throw ConfigError("support_deficit_integral: black and white sets must be nonempty and disjoint");
    }
    DeficitIntegrand f;
    for (const auto& p : black.points()) f.black.push_back(p.cast<double>());
    for (const auto& p : white.points()) f.white.push_back(p.cast<double>());

    double previous_raw = integrate_sphere(f, options.min_level);
    double previous_extrapolated = previous_raw;
    bool have_extrapolated = false;
    for (int level = options.min_level + 1; level <= options.max_level; ++level) {
        const double raw = integrate_sphere(f, level);
        // midpoint error scales with the squared cell diameter, i.e. 1/4 per level
        const double extrapolated = (4.0 * raw - previous_raw) / 3.0;
        if (have_extrapolated) {
            const double diff = std::abs(extrapolated - previous_extrapolated);
            if (diff <= std::max(options.rel_tol * std::abs(extrapolated), options.abs_tol)) {
                return {extrapolated, diff, level};
            }
        }
        previous_raw = raw;
        previous_extrapolated = extrapolated;
        have_extrapolated = true;
    }
    std::ostringstream msg;
    msg << "support_deficit_integral: no convergence by level " << options.max_level
        << " (last estimate " << previous_extrapolated << ")";
    throw QuadratureError(msg.str());
}

}  // namespace boolvox
