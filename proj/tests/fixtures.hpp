// SPDX-License-Identifier: Apache-2.0
// Published reference values for the 2x2x2 configuration classes and optimal weights.
#pragma once

#include "boolvox/weights.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace boolvox::fixtures {

inline constexpr std::array<int, 21> kMultiplicities = {1, 8, 12, 12, 4, 24, 24, 8, 6, 8, 24,
                                                        6, 2, 24, 8, 24, 24, 4, 12, 12, 8};

// clang-format off
inline constexpr int kInclusionExclusion[21][21] = {
    { 1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0, 0},
    {-1,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0, 0},
    { 1, -2,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0, 0},
    { 1, -2,  0,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0, 0},
    { 1, -2,  0,  0,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0, 0},
    {-1,  3, -2, -1,  0,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0, 0},
    {-1,  3, -1, -1, -1,  0,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0, 0},
    {-1,  3,  0, -3,  0,  0,  0,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0, 0},
    { 1, -4,  4,  2,  0, -4,  0,  0,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0, 0},
    { 1, -4,  3,  3,  0, -3,  0, -1,  0,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0,  0, 0},
    { 1, -4,  3,  2,  1, -2, -2,  0,  0,  0,  1,  0,  0,  0,  0,  0,  0,  0,  0,  0, 0},
    { 1, -4,  2,  2,  2,  0, -4,  0,  0,  0,  0,  1,  0,  0,  0,  0,  0,  0,  0,  0, 0},
    { 1, -4,  0,  6,  0,  0,  0, -4,  0,  0,  0,  0,  1,  0,  0,  0,  0,  0,  0,  0, 0},
    { 1, -4,  2,  3,  1, -1, -2, -1,  0,  0,  0,  0,  0,  1,  0,  0,  0,  0,  0,  0, 0},
    {-1,  5, -3, -6, -1,  3,  3,  4,  0, -1,  0,  0, -1, -3,  1,  0,  0,  0,  0,  0, 0},
    {-1,  5, -4, -4, -2,  3,  6,  1,  0,  0, -2, -1,  0, -2,  0,  1,  0,  0,  0,  0, 0},
    {-1,  5, -5, -4, -1,  6,  3,  1, -1, -1, -2,  0,  0, -1,  0,  0,  1,  0,  0,  0, 0},
    { 1, -6,  6,  6,  3, -6,-12, -2,  0,  0,  6,  3,  0,  6,  0, -6,  0,  1,  0,  0, 0},
    { 1, -6,  6,  7,  2, -8, -8, -4,  1,  2,  4,  1,  1,  6, -2, -2, -2,  0,  1,  0, 0},
    { 1, -6,  7,  6,  2,-10, -8, -2,  2,  2,  6,  1,  0,  4,  0, -2, -4,  0,  0,  1, 0},
    {-1,  7, -9, -9, -3, 15, 15,  5, -3, -4,-12, -3, -1,-12,  3,  9,  9, -1, -3, -3, 1},
};
// clang-format on

/// arctan(sqrt 2) / (2 pi)
inline double xi() { return std::atan(std::sqrt(2.0)) / (2 * std::numbers::pi); }

struct GeometryRow {
    double v3, v2, v1, power_volume_x24;
};

inline std::array<GeometryRow, 21> class_geometry() {
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), x = xi();
    return {{
        {1, 3, 3, 3},
        {5.0 / 6, 9.0 / 4 + s3 / 4, 9.0 / 4 + 3 * s2 * x, 9.0 / 4 + 6 * s2 * x},
        {0.5, 1.5 + s2 / 2, 2 + s2 / 2, 2 + s2},
        {2.0 / 3, 1.5 + s3 / 2, 1.5 + 6 * s2 * x, 1.5 + 12 * s2 * x},
        {2.0 / 3, 1.5 + s3 / 2, 1.5 + 6 * s2 * x, 1.5 + 12 * s2 * x},
        {1.0 / 3, 1 + s2 / 2, 1.5 + s2 / 2 + s3 / 6, 1.5 + s2 + s3 / 2},
        {1.0 / 3, 0.75 + s2 / 2 + s3 / 4, 1.25 + s2 / 2 + 3 * s2 * x, 1.25 + s2 + 6 * s2 * x},
        {0.5, 0.75 + 3 * s3 / 4, 0.75 + 9 * s2 * x, 0.75 + 18 * s2 * x},
        {0, 1, 2, 2},
        {1.0 / 6, 0.75 + s3 / 4, 0.75 + 1.5 * s2 - 3 * s2 * x, 0.75 + 3 * s2 - 6 * s2 * x},
        {1.0 / 6, 0.5 + s2 / 2, 1 + s2 / 2 + s3 / 3, 1 + s2 + s3},
        {0, s2, 1 + s2, 1 + 2 * s2},
        {1.0 / 3, s3, 12 * s2 * x, 24 * s2 * x},
        {1.0 / 6, 0.25 + s2 / 2 + s3 / 4, 0.75 + s2 / 2 + s3 / 6 + 3 * s2 * x, 0.75 + s2 + s3 / 2 + 6 * s2 * x},
        {0, s3 / 2, 1.5 * s2, 3 * s2},
        {0, s2 / 2, 0.5 + s2 / 2 + s3 / 2, 0.5 + s2 + 1.5 * s3},
        {0, 0.5, 1 + s2 / 2, 1 + s2},
        {0, 0, s3, 3 * s3},
        {0, 0, s2, 2 * s2},
        {0, 0, 1, 1},
        {0, 0, 0, 0},
    }};
}

/// Closed forms of columns 3, 4 and 6 of Q and the printed 4-significant-digit column 5.
struct QRow {
    double q3, q4, q5_printed, q6;
};

inline std::array<QRow, 21> q_closed_forms() {
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), x = xi(), pi = std::numbers::pi;
    const double q6_2 = -(4 + pi * (-0.75 + 6 * s2 * x)) / 24;
    const double q6_3 = -(4 + pi * (0.5 - 12 * s2 * x + s2)) / 24;
    const double q6_6 = (4 - pi * (-0.25 - s2 + 6 * s2 * x + s3 / 2)) / 24;
    return {{
        {3, 3, 9, 1 - pi / 8},
        {-0.75 + 3 * s2 * x, (s3 - 3) / 4, -0.6186, q6_2},
        {0.5 - 6 * s2 * x + s2 / 2, (s2 - s3) / 2, -0.4344, q6_3},
        {0, 0, 0.02203, 0},
        {0, 0, 0.02203, 0},
        {-0.25 - s2 / 2 + 3 * s2 * x + s3 / 6, (1 - 2 * s2 + s3) / 4, -0.06855, q6_6},
        {0, 0, 0.0174, 0},
        {0, 0, 0, 0},
        {1 - 2 * s3 / 3, 0, -0.5580, -1.0 / 3 - pi / 24 * (1 - 2 * s3)},
        {1.5 * s2 - 6 * s2 * x - s3 / 2, 0, -0.1267, -(4 + pi * (3 * s2 - 12 * s2 * x - 1.5 * s3)) / 24},
        {0, 0, 0.03245, 0},
        {0, 0, 0.01379, 0},
        {0, 0, 0, 0},
        {0, 0, 0.004902, 0},
        {0, 0, 0.007310, 0},
        {0, 0, 0.008850, 0},
        {-0.25 - s2 / 2 + 3 * s2 * x + s3 / 6, (2 * s2 - s3 - 1) / 4, 0.04284, q6_6},
        {0, 0, 0.00328, 0},
        {0, 0, 0.04898, 0},
        {0.5 - 6 * s2 * x + s2 / 2, (s3 - s2) / 2, 0.07429, q6_3},
        {-0.75 + 3 * s2 * x, (3 - s3) / 4, 0.5730, q6_2},
    }};
}

inline constexpr std::array<int, 6> kOptimalSupport = {2, 9, 11, 17, 20, 21};

/// Four-decimal optimal weights on classes 2, 9, 11, 17, 20, 21. The q = 0 entry for
/// class 17 is -0.1937; the equations rule out the printed -1.937.
inline WeightVector optimal_weights(int q) {
    static constexpr double w2[] = {0.1777, 2.2019, 4.7430, 0.5241, -1.4678, 1.1620};
    static constexpr double w1[] = {0.4789, -0.3769, 1.0450, 0.0111, 0.5583, -0.7321};
    static constexpr double w0[] = {0.1535, -0.3024, -0.3830, -0.1937, 0.2587, 0.0031};
    const double* src = q == 2 ? w2 : q == 1 ? w1 : w0;
    WeightVector w = WeightVector::zeros(q);
    for (std::size_t i = 0; i < kOptimalSupport.size(); ++i) w(kOptimalSupport[i]) = src[i];
    return w;
}

inline constexpr double kPrintedW0Class17 = -1.937;

/// Miles values for gamma = 0.1 and unit balls, as quoted to six digits.
inline constexpr double kV3Quoted = 0.342216;
inline constexpr double kV2Quoted = 0.413289;
inline constexpr double kV1Quoted = 0.161137;
inline constexpr double kV0Quoted = -0.006202;

}  // namespace boolvox::fixtures
