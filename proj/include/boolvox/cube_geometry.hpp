// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "boolvox/types.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

namespace boolvox {

/// Subset of the unit-cube vertices {0,1}^3. Vertex i sits at (i&1, (i>>1)&1, (i>>2)&1).
class VertexSet {
  public:
    constexpr VertexSet() = default;
    constexpr explicit VertexSet(std::uint8_t bits) : bits_(bits) {}

    static constexpr VertexSet all() { return VertexSet(0xFF); }

    constexpr std::uint8_t bits() const { return bits_; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }

    static Vector3i vertex(int i) { return {i & 1, (i >> 1) & 1, (i >> 2) & 1}; }

    /// Integer coordinates of the members, multiplied by `scale`.
    std::vector<Vector3i> points(int scale = 1) const {
        std::vector<Vector3i> out;
        for (int i = 0; i < 8; ++i) {
            if (contains(i)) out.push_back(scale * vertex(i));
        }
        return out;
    }

    friend constexpr bool operator==(VertexSet, VertexSet) = default;

  private:
    std::uint8_t bits_ = 0;
};

template <typename Scalar = double>
struct PolytopeEdge {
    int a = 0;  // indices into SmallPolytope::points
    int b = 0;
    Scalar length = 0;
    /// Angle of the normal cone, measured in the plane orthogonal to the edge.
    Scalar normal_angle = 0;
};

template <typename Scalar = double>
struct PolytopeFacet {
    Vector3i normal;  // outward, primitive integer vector
    std::vector<int> vertices;
    Scalar area = 0;
};

template <typename Scalar = double>
struct SmallPolytope {
    int dim = 0;
    std::vector<Vector3i> points;
    std::vector<int> vertices;
    std::vector<PolytopeEdge<Scalar>> edges;
    std::vector<PolytopeFacet<Scalar>> facets;
    Scalar area = 0;    // polygon area for dim 2, total boundary area for dim 3
    Scalar volume = 0;
};

template <typename Scalar = double>
struct IntrinsicVolumes {
    Scalar v1 = 0;
    Scalar v2 = 0;
    Scalar v3 = 0;
};

namespace detail {

inline long long dot(const Vector3i& u, const Vector3i& v) {
    return static_cast<long long>(u.x()) * v.x() + static_cast<long long>(u.y()) * v.y() +
           static_cast<long long>(u.z()) * v.z();
}

inline Vector3i primitive(Vector3i v) {
    int g = std::gcd(std::gcd(std::abs(v.x()), std::abs(v.y())), std::abs(v.z()));
    return g > 1 ? Vector3i(v / g) : v;
}

template <typename Scalar>
Scalar length(const Vector3i& v) {
    using std::sqrt;
    return sqrt(static_cast<Scalar>(dot(v, v)));
}

/// Boundary edges of the convex polygon spanned by `ids` in the plane with normal `n`.
/// Each returned pair (i, j) is oriented counter-clockwise seen from the tip of `n`.
inline std::vector<std::pair<int, int>> polygon_edges(std::span<const Vector3i> pts,
                                                      const std::vector<int>& ids,
                                                      const Vector3i& n) {
    std::vector<std::pair<int, int>> out;
    for (std::size_t s = 0; s < ids.size(); ++s) {
        for (std::size_t t = s + 1; t < ids.size(); ++t) {
            const int i = ids[s];
            const int j = ids[t];
            const Vector3i e = pts[j] - pts[i];
            const Vector3i left = n.cross(e);
            bool pos = false;
            bool neg = false;
            bool interior_collinear = true;
            for (int k : ids) {
                if (k == i || k == j) continue;
                const long long side = dot(left, pts[k] - pts[i]);
                pos |= side > 0;
                neg |= side < 0;
                if (side == 0) {
                    // a collinear point outside [i, j] means (i, j) is not extremal
                    const long long along = dot(e, pts[k] - pts[i]);
                    if (along <= 0 || along >= dot(e, e)) interior_collinear = false;
                }
            }
            if (pos && neg) continue;
            if (!interior_collinear) continue;
            out.emplace_back(neg ? j : i, neg ? i : j);
        }
    }
    return out;
}

template <typename Scalar>
Scalar polygon_area(std::span<const Vector3i> pts, const std::vector<std::pair<int, int>>& edges,
                    const Vector3i& n) {
    long long twice = 0;
    for (auto [i, j] : edges) twice += dot(n, pts[i].cross(pts[j]));
    return static_cast<Scalar>(twice) / (2 * length<Scalar>(n));
}

}  // namespace detail

/// Convex hull of a small integer point set by brute-force facet enumeration.
/// Predicates are exact integer arithmetic; lengths and angles are evaluated in `Scalar`.
template <typename Scalar = double>
SmallPolytope<Scalar> convex_hull(std::span<const Vector3i> input) {
    using std::atan2;
    using detail::dot;
    const Scalar pi = std::numbers::pi_v<Scalar>;

    SmallPolytope<Scalar> poly;
    poly.points.assign(input.begin(), input.end());
    auto& pts = poly.points;
    const int n = static_cast<int>(pts.size());
    if (n == 0) return poly;

    // affine dimension
    int i1 = -1;
    int i2 = -1;
    int i3 = -1;
    for (int i = 1; i < n && i1 < 0; ++i) {
        if (pts[i] != pts[0]) i1 = i;
    }
    if (i1 >= 0) {
        for (int i = 1; i < n && i2 < 0; ++i) {
            if ((pts[i1] - pts[0]).cross(pts[i] - pts[0]) != Vector3i::Zero()) i2 = i;
        }
    }
    if (i2 >= 0) {
        const Vector3i nrm = (pts[i1] - pts[0]).cross(pts[i2] - pts[0]);
        for (int i = 1; i < n && i3 < 0; ++i) {
            if (dot(nrm, pts[i] - pts[0]) != 0) i3 = i;
        }
    }
    poly.dim = i1 < 0 ? 0 : i2 < 0 ? 1 : i3 < 0 ? 2 : 3;

    if (poly.dim == 0) {
        poly.vertices = {0};
        return poly;
    }

    if (poly.dim == 1) {
        int a = 0;
        int b = 0;
        long long best = -1;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const long long d = dot(pts[j] - pts[i], pts[j] - pts[i]);
                if (d > best) {
                    best = d;
                    a = i;
                    b = j;
                }
            }
        }
        poly.vertices = {a, b};
        poly.edges.push_back({a, b, detail::length<Scalar>(pts[b] - pts[a]), 2 * pi});
        return poly;
    }

    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);

    if (poly.dim == 2) {
        const Vector3i nrm = detail::primitive((pts[i1] - pts[0]).cross(pts[i2] - pts[0]));
        const auto edges = detail::polygon_edges(pts, all, nrm);
        for (auto [i, j] : edges) {
            poly.edges.push_back({i, j, detail::length<Scalar>(pts[j] - pts[i]), pi});
            poly.vertices.push_back(i);
        }
        std::sort(poly.vertices.begin(), poly.vertices.end());
        poly.area = detail::polygon_area<Scalar>(pts, edges, nrm);
        return poly;
    }

    // dim 3: supporting planes through point triples
    std::map<std::pair<std::array<int, 3>, long long>, int> plane_index;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) {
                Vector3i nrm = (pts[j] - pts[i]).cross(pts[k] - pts[i]);
                if (nrm == Vector3i::Zero()) continue;
                bool pos = false;
                bool neg = false;
                for (int l = 0; l < n; ++l) {
                    const long long s = dot(nrm, pts[l] - pts[i]);
                    pos |= s > 0;
                    neg |= s < 0;
                }
                if (pos && neg) continue;
                if (pos) nrm = -nrm;
                nrm = detail::primitive(nrm);
                const long long offset = dot(nrm, pts[i]);
                const auto key = std::make_pair(std::array<int, 3>{nrm.x(), nrm.y(), nrm.z()}, offset);
                if (plane_index.count(key)) continue;
                plane_index.emplace(key, static_cast<int>(poly.facets.size()));
                PolytopeFacet<Scalar> facet;
                facet.normal = nrm;
                for (int l = 0; l < n; ++l) {
                    if (dot(nrm, pts[l]) == offset) facet.vertices.push_back(l);
                }
                poly.facets.push_back(std::move(facet));
            }
        }
    }

    std::map<std::pair<int, int>, std::vector<int>> edge_facets;
    for (std::size_t f = 0; f < poly.facets.size(); ++f) {
        auto& facet = poly.facets[f];
        const auto edges = detail::polygon_edges(pts, facet.vertices, facet.normal);
        facet.area = detail::polygon_area<Scalar>(pts, edges, facet.normal);
        facet.vertices.clear();
        for (auto [i, j] : edges) {
            facet.vertices.push_back(i);  // boundary walk start points: the facet's corners
            edge_facets[{std::min(i, j), std::max(i, j)}].push_back(static_cast<int>(f));
        }
        std::sort(facet.vertices.begin(), facet.vertices.end());
        poly.area += facet.area;
        poly.volume += facet.area * static_cast<Scalar>(dot(facet.normal, pts[facet.vertices.front()])) /
                       (3 * detail::length<Scalar>(facet.normal));
    }

    for (const auto& [key, fs] : edge_facets) {
        // every hull edge is shared by exactly two facets
        const Vector3i& n1 = poly.facets[fs.at(0)].normal;
        const Vector3i& n2 = poly.facets[fs.at(1)].normal;
        const Scalar cross = detail::length<Scalar>(n1.cross(n2));
        const Scalar angle = atan2(cross, static_cast<Scalar>(dot(n1, n2)));
        poly.edges.push_back({key.first, key.second, detail::length<Scalar>(pts[key.second] - pts[key.first]),
                              angle});
        poly.vertices.push_back(key.first);
        poly.vertices.push_back(key.second);
    }
    std::sort(poly.vertices.begin(), poly.vertices.end());
    poly.vertices.erase(std::unique(poly.vertices.begin(), poly.vertices.end()), poly.vertices.end());
    return poly;
}

template <typename Scalar = double>
SmallPolytope<Scalar> convex_hull(VertexSet set) {
    const auto pts = set.points();
    return convex_hull<Scalar>(std::span<const Vector3i>(pts));
}

/// V1 from edge lengths and normal-cone angles, V2 from facet areas, V3 = volume.
template <typename Scalar>
IntrinsicVolumes<Scalar> intrinsic_volumes(const SmallPolytope<Scalar>& poly) {
    const Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
    IntrinsicVolumes<Scalar> out;
    for (const auto& e : poly.edges) out.v1 += e.length * e.normal_angle / two_pi;
    if (poly.dim == 3) out.v2 = poly.area / 2;
    if (poly.dim == 2) out.v2 = poly.area;
    out.v3 = poly.volume;
    return out;
}

/// Intrinsic power volume V_1^(3): (1/12) sum over edges of (angle / 4 pi) * length^3.
template <typename Scalar>
Scalar power_volume_v13(const SmallPolytope<Scalar>& poly) {
    const Scalar four_pi = 4 * std::numbers::pi_v<Scalar>;
    Scalar sum = 0;
    for (const auto& e : poly.edges) sum += e.normal_angle / four_pi * e.length * e.length * e.length;
    return sum / 12;
}

template <typename Scalar = double>
Scalar power_volume_v13(VertexSet set) {
    return power_volume_v13(convex_hull<Scalar>(set));
}

/// h(F, u) = max over members of <x, u>.
double support_function(VertexSet set, const Vector3d& u);

struct QuadratureOptions {
    double rel_tol = 1e-4;
    double abs_tol = 1e-9;
    int min_level = 4;
    int max_level = 9;
};

struct QuadratureResult {
    double value = 0;
    double error_estimate = 0;
    int level = 0;
};

/// Spherical integral of (-h(B + (-W), u))^+ against surface measure on S^2.
/// Uniformly refined icosahedral rule with Richardson extrapolation between levels.
/// Throws QuadratureError when max_level is reached without agreement.
QuadratureResult support_deficit_integral(VertexSet black, VertexSet white,
                                          const QuadratureOptions& options = {});

}  // namespace boolvox
