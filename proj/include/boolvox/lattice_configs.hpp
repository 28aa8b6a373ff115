// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "boolvox/cube_geometry.hpp"
#include "boolvox/types.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace boolvox {

/// Occupancy of a 2x2x2 window: bit i set iff lattice point x_i is foreground (black).
/// x_i has coordinates (i&1, (i>>1)&1, (i>>2)&1).
class ConfigMask {
  public:
    constexpr ConfigMask() = default;
    constexpr explicit ConfigMask(std::uint8_t bits) : bits_(bits) {}

    constexpr std::uint8_t bits() const { return bits_; }
    constexpr bool is_black(int i) const { return (bits_ >> i) & 1u; }
    constexpr VertexSet black() const { return VertexSet(bits_); }
    constexpr VertexSet white() const { return VertexSet(static_cast<std::uint8_t>(~bits_)); }

    static constexpr ConfigMask from_white(VertexSet white) {
        return ConfigMask(static_cast<std::uint8_t>(~white.bits()));
    }

    friend constexpr bool operator==(ConfigMask, ConfigMask) = default;

  private:
    std::uint8_t bits_ = 0;
};

/// Permutation of the 8 cube vertex indices.
using VertexPermutation = std::array<std::uint8_t, 8>;

/// Full symmetry group of the cube (48 signed axis permutations) acting on vertex indices.
class SymmetryGroup {
  public:
    explicit SymmetryGroup(std::vector<VertexPermutation> elements) : elements_(std::move(elements)) {}

    std::span<const VertexPermutation> elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    bool contains(const VertexPermutation& g) const;

    static ConfigMask apply(const VertexPermutation& g, ConfigMask mask);
    static VertexSet apply(const VertexPermutation& g, VertexSet set);
    /// (a * b)(i) = a(b(i))
    static VertexPermutation compose(const VertexPermutation& a, const VertexPermutation& b);
    static VertexPermutation identity();

  private:
    std::vector<VertexPermutation> elements_;
};

SymmetryGroup build_symmetry_group();

/// The 22 motion-equivalence classes of white sets, numbered 1..22 (22 = empty white set).
class ClassTable {
  public:
    /// Built on first use; immutable afterwards.
    static const ClassTable& instance();

    ClassId classify(ConfigMask mask) const { return class_of_[mask.bits()]; }
    const std::array<ClassId, kNumMasks>& lookup() const { return class_of_; }

    /// Smallest mask value in the class.
    ConfigMask representative(ClassId j) const { return representative_.at(j); }
    /// |eta_j|; class 22 has multiplicity 1.
    int multiplicity(ClassId j) const { return multiplicity_.at(j); }
    /// Diagonal of D for classes 1..21.
    Eigen::Matrix<int, kNumClasses, 1> multiplicities() const;
    std::vector<ConfigMask> members(ClassId j) const;

    /// M for classes 1..21.
    const ClassMatrix& inclusion_exclusion() const { return m_; }
    /// 22x22 version including the all-black configuration (row and column 22).
    const ExtendedClassMatrix& extended_inclusion_exclusion() const { return m_ext_; }

    const SymmetryGroup& group() const { return group_; }

  private:
    ClassTable();

    SymmetryGroup group_;
    std::array<ClassId, kNumMasks> class_of_{};
    std::array<ConfigMask, kNumClassesWithEmpty + 1> representative_{};
    std::array<int, kNumClassesWithEmpty + 1> multiplicity_{};
    ClassMatrix m_;
    ExtendedClassMatrix m_ext_;
};

ClassId classify_mask(ConfigMask mask);
Eigen::Matrix<int, kNumClasses, 1> class_multiplicities();
ClassMatrix inclusion_exclusion_matrix();

/// Row of the extended M for an arbitrary configuration:
/// entry j = sum over S subset of B of (-1)^|S| [W u S in eta_j].
Eigen::Matrix<int, 1, kNumClassesWithEmpty> inclusion_exclusion_row(ConfigMask configuration,
                                                                     const ClassTable& table = ClassTable::instance());

/// Number of white-set orbits of the given group acting on all 256 masks.
int count_orbits(const SymmetryGroup& group);

}  // namespace boolvox
