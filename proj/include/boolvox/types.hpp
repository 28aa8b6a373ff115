// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include <cstdint>

namespace boolvox {

/// Number of nonempty white-set classes; class 22 is the empty white set.
inline constexpr int kNumClasses = 21;
inline constexpr int kNumClassesWithEmpty = 22;
inline constexpr int kNumMasks = 256;

/// Length of the ball-grain expansion basis v(a).
inline constexpr int kExpansionOrder = 8;

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

template <typename Scalar>
using ExpansionRow = Eigen::Matrix<Scalar, 1, kExpansionOrder>;

using Vector3d = Vector3<double>;
using Vector3i = Eigen::Vector3i;
using Row8d = ExpansionRow<double>;

using ClassMatrix = Eigen::Matrix<int, kNumClasses, kNumClasses>;
using ExtendedClassMatrix = Eigen::Matrix<int, kNumClassesWithEmpty, kNumClassesWithEmpty>;
using ExpansionMatrix = Eigen::Matrix<double, kNumClasses, kExpansionOrder>;

/// 1-based class id in 1..22.
using ClassId = int;

}  // namespace boolvox
