// SPDX-License-Identifier: Apache-2.0
#include "boolvox/lattice_configs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace boolvox {

bool SymmetryGroup::contains(const VertexPermutation& g) const {
    return std::find(elements_.begin(), elements_.end(), g) != elements_.end();
}

ConfigMask SymmetryGroup::apply(const VertexPermutation& g, ConfigMask mask) {
    return ConfigMask(apply(g, mask.black()).bits());
}

VertexSet SymmetryGroup::apply(const VertexPermutation& g, VertexSet set) {
    std::uint8_t out = 0;
    for (int i = 0; i < 8; ++i) {
        if (set.contains(i)) out |= static_cast<std::uint8_t>(1u << g[i]);
    }
    return VertexSet(out);
}

VertexPermutation SymmetryGroup::compose(const VertexPermutation& a, const VertexPermutation& b) {
    VertexPermutation out{};
    for (int i = 0; i < 8; ++i) out[i] = a[b[i]];
    return out;
}

VertexPermutation SymmetryGroup::identity() {
    VertexPermutation out{};
    std::iota(out.begin(), out.end(), std::uint8_t{0});
    return out;
}

SymmetryGroup build_symmetry_group() {
    std::vector<VertexPermutation> elements;
    std::array<int, 3> axes = {0, 1, 2};
    do {
        for (int flips = 0; flips < 8; ++flips) {
            VertexPermutation g{};
            for (int i = 0; i < 8; ++i) {
                const Vector3i p = VertexSet::vertex(i);
                int image = 0;
                for (int k = 0; k < 3; ++k) {
                    const int coord = p[axes[k]] ^ ((flips >> k) & 1);
                    image |= coord << k;
                }
                g[i] = static_cast<std::uint8_t>(image);
            }
            elements.push_back(g);
        }
    } while (std::next_permutation(axes.begin(), axes.end()));
    return SymmetryGroup(std::move(elements));
}

int count_orbits(const SymmetryGroup& group) {
    std::set<std::uint8_t> canonical;
    for (int m = 0; m < kNumMasks; ++m) {
        std::uint8_t best = 0xFF;
        for (const auto& g : group.elements()) {
            best = std::min(best, SymmetryGroup::apply(g, ConfigMask(static_cast<std::uint8_t>(m))).bits());
        }
        canonical.insert(best);
    }
    return static_cast<int>(canonical.size());
}

namespace {

// Class numbering convention for eta_1..eta_21: white-set size, orbit size, volume and
// half surface area of the hull. eta_18..eta_20 (two white points) are told apart by the
// squared distance between the points.
struct ClassKey {
    int white_count;
    int multiplicity;
    double v3;
    double v2;
    int diameter_sq;  // 0 = not used
};

std::array<ClassKey, kNumClasses> class_keys() {
    const double r2 = std::sqrt(2.0);
    const double r3 = std::sqrt(3.0);
    return {{
        {8, 1, 1.0, 3.0, 0},
        {7, 8, 5.0 / 6, 9.0 / 4 + r3 / 4, 0},
        {6, 12, 1.0 / 2, 3.0 / 2 + r2 / 2, 0},
        {6, 12, 2.0 / 3, 3.0 / 2 + r3 / 2, 0},
        {6, 4, 2.0 / 3, 3.0 / 2 + r3 / 2, 0},
        {5, 24, 1.0 / 3, 1.0 + r2 / 2, 0},
        {5, 24, 1.0 / 3, 3.0 / 4 + r2 / 2 + r3 / 4, 0},
        {5, 8, 1.0 / 2, 3.0 / 4 + 3 * r3 / 4, 0},
        {4, 6, 0.0, 1.0, 0},
        {4, 8, 1.0 / 6, 3.0 / 4 + r3 / 4, 0},
        {4, 24, 1.0 / 6, 1.0 / 2 + r2 / 2, 0},
        {4, 6, 0.0, r2, 0},
        {4, 2, 1.0 / 3, r3, 0},
        {4, 24, 1.0 / 6, 1.0 / 4 + r2 / 2 + r3 / 4, 0},
        {3, 8, 0.0, r3 / 2, 0},
        {3, 24, 0.0, r2 / 2, 0},
        {3, 24, 0.0, 1.0 / 2, 0},
        {2, 4, 0.0, 0.0, 3},
        {2, 12, 0.0, 0.0, 2},
        {2, 12, 0.0, 0.0, 1},
        {1, 8, 0.0, 0.0, 0},
    }};
}

int diameter_sq(VertexSet set) {
    int best = 0;
    const auto pts = set.points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, (pts[i] - pts[j]).squaredNorm());
    }
    return best;
}

ClassId match_class(VertexSet white, int orbit_size) {
    constexpr double tol = 1e-9;
    const auto vols = intrinsic_volumes(convex_hull<double>(white));
    const auto keys = class_keys();
    ClassId found = 0;
    for (int j = 0; j < kNumClasses; ++j) {
        const auto& key = keys[j];
        if (key.white_count != white.size() || key.multiplicity != orbit_size) continue;
        if (std::abs(key.v3 - vols.v3) > tol || std::abs(key.v2 - vols.v2) > tol) continue;
        if (key.diameter_sq != 0 && key.diameter_sq != diameter_sq(white)) continue;
        if (found != 0) throw std::logic_error("class labeling is ambiguous");
        found = j + 1;
    }
    if (found == 0) throw std::logic_error("white set matches no class: bits " + std::to_string(white.bits()));
    return found;
}

}  // namespace

ClassTable::ClassTable() : group_(build_symmetry_group()) {
    std::array<bool, kNumMasks> seen{};
    for (int m = 0; m < kNumMasks; ++m) {
        if (seen[m]) continue;
        const ConfigMask mask(static_cast<std::uint8_t>(m));
        std::set<std::uint8_t> orbit;
        for (const auto& g : group_.elements()) orbit.insert(SymmetryGroup::apply(g, mask).bits());
        const int size = static_cast<int>(orbit.size());
        const ClassId j = mask.white().empty() ? kNumClassesWithEmpty : match_class(mask.white(), size);
        if (multiplicity_[j] != 0) throw std::logic_error("two orbits mapped to one class");
        multiplicity_[j] = size;
        representative_[j] = ConfigMask(*orbit.begin());
        for (auto member : orbit) {
            seen[member] = true;
            class_of_[member] = j;
        }
    }

    for (ClassId i = 1; i <= kNumClassesWithEmpty; ++i) {
        m_ext_.row(i - 1) = inclusion_exclusion_row(representative_[i], *this);
    }
    m_ = m_ext_.topLeftCorner<kNumClasses, kNumClasses>();
}

const ClassTable& ClassTable::instance() {
    static const ClassTable table;
    return table;
}

Eigen::Matrix<int, kNumClasses, 1> ClassTable::multiplicities() const {
    Eigen::Matrix<int, kNumClasses, 1> out;
    for (int j = 0; j < kNumClasses; ++j) out(j) = multiplicity_[j + 1];
    return out;
}

std::vector<ConfigMask> ClassTable::members(ClassId j) const {
    std::vector<ConfigMask> out;
    for (int m = 0; m < kNumMasks; ++m) {
        if (class_of_[m] == j) out.emplace_back(static_cast<std::uint8_t>(m));
    }
    return out;
}

Eigen::Matrix<int, 1, kNumClassesWithEmpty> inclusion_exclusion_row(ConfigMask configuration,
                                                                     const ClassTable& table) {
    Eigen::Matrix<int, 1, kNumClassesWithEmpty> row = Eigen::Matrix<int, 1, kNumClassesWithEmpty>::Zero();
    const std::uint8_t black = configuration.bits();
    // walk every subset S of the black set, including the empty set
    std::uint8_t s = 0;
    do {
        const ConfigMask moved(static_cast<std::uint8_t>(black & ~s));
        const int sign = (std::popcount(s) % 2 == 0) ? 1 : -1;
        row(table.classify(moved) - 1) += sign;
        s = static_cast<std::uint8_t>((s - black) & black);
    } while (s != 0);
    return row;
}

ClassId classify_mask(ConfigMask mask) { return ClassTable::instance().classify(mask); }

Eigen::Matrix<int, kNumClasses, 1> class_multiplicities() { return ClassTable::instance().multiplicities(); }

ClassMatrix inclusion_exclusion_matrix() { return ClassTable::instance().inclusion_exclusion(); }

}  // namespace boolvox
