// SPDX-License-Identifier: Apache-2.0
#include "boolvox/boolean_sim.hpp"

#include "boolvox/errors.hpp"
#include "boolvox/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace boolvox {

Realization::Realization(std::vector<Ball> balls, double window, double margin)
    : balls_(std::move(balls)), window_(window), margin_(margin), cell_size_(margin) {
    if (!(window > 0)) throw ConfigError("window side must be positive");
    if (!(margin > 0)) throw ConfigError("margin must be positive");
    cells_ = std::max(1, static_cast<int>(std::ceil((window_ + 2 * margin_) / cell_size_)));
    const int total = cells_ * cells_ * cells_;

    auto for_each_cell = [&](const Ball& b, auto&& fn) {
        const int x0 = cell_coord(b.center.x() - b.radius), x1 = cell_coord(b.center.x() + b.radius);
        const int y0 = cell_coord(b.center.y() - b.radius), y1 = cell_coord(b.center.y() + b.radius);
        const int z0 = cell_coord(b.center.z() - b.radius), z1 = cell_coord(b.center.z() + b.radius);
        for (int z = z0; z <= z1; ++z)
            for (int y = y0; y <= y1; ++y)
                for (int x = x0; x <= x1; ++x) fn(cell_index(x, y, z));
    };

    // CSR layout: count, prefix sum, fill
    cell_start_.assign(total + 1, 0);
    for (const auto& b : balls_) for_each_cell(b, [&](int c) { ++cell_start_[c + 1]; });
    for (int c = 0; c < total; ++c) cell_start_[c + 1] += cell_start_[c];
    cell_items_.resize(cell_start_[total]);
    std::vector<int> fill(cell_start_.begin(), cell_start_.end() - 1);
    for (int i = 0; i < static_cast<int>(balls_.size()); ++i) {
        for_each_cell(balls_[i], [&](int c) { cell_items_[fill[c]++] = i; });
    }
}

int Realization::cell_coord(double t) const {
    const double s = std::floor((t + margin_) / cell_size_);
    if (!(s > 0)) return 0;
    return std::min(cells_ - 1, static_cast<int>(s));
}

bool Realization::contains(const Vector3d& x) const {
    const int c = cell_index(cell_coord(x.x()), cell_coord(x.y()), cell_coord(x.z()));
    for (int k = cell_start_[c]; k < cell_start_[c + 1]; ++k) {
        if (covers(balls_[cell_items_[k]], x)) return true;
    }
    return false;
}

bool Realization::contains_naive(const Vector3d& x) const {
    return std::any_of(balls_.begin(), balls_.end(), [&](const Ball& b) { return covers(b, x); });
}

Realization sample_realization(const BallModelParams& params, double window, std::uint64_t seed,
                               std::uint64_t stream) {
    if (!(window > 0)) throw ConfigError("window side must be positive");
    const double margin = params.radius.max();
    const double side = window + 2 * margin;
    RandomStream rng(seed, stream);
    const std::uint64_t n = rng.poisson(params.gamma * side * side * side);
    std::vector<Ball> balls;
    balls.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        Ball b;
        b.center.x() = rng.uniform(-margin, window + margin);
        b.center.y() = rng.uniform(-margin, window + margin);
        b.center.z() = rng.uniform(-margin, window + margin);
        b.radius = params.radius.quantile(rng.uniform01());
        balls.push_back(b);
    }
    return Realization(std::move(balls), window, margin);
}

namespace {

McEstimate binomial(std::uint64_t hits, std::uint64_t n, double scale = 1.0) {
    if (n == 0) return {};
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return {p / scale, std::sqrt(p * (1 - p) / static_cast<double>(n)) / scale};
}

Vector3d uniform_in_ball(RandomStream& rng, double radius) {
    while (true) {
        Vector3d p(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
        if (p.squaredNorm() <= 1.0) return radius * p;
    }
}

constexpr std::uint64_t kBlock = 4096;

}  // namespace

McEstimate MaskHistogram::mask(ConfigMask m) const { return binomial(counts[m.bits()], replications); }

McEstimate MaskHistogram::class_mean(ClassId j) const {
    const auto& table = ClassTable::instance();
    std::uint64_t hits = 0;
    for (int m = 0; m < kNumMasks; ++m) {
        if (table.lookup()[m] == j) hits += counts[m];
    }
    return binomial(hits, replications, table.multiplicity(j));
}

McEstimate MaskHistogram::white_superset(VertexSet s) const {
    std::uint64_t hits = 0;
    for (int m = 0; m < kNumMasks; ++m) {
        if ((ConfigMask(static_cast<std::uint8_t>(m)).white().bits() & s.bits()) == s.bits()) hits += counts[m];
    }
    return binomial(hits, replications);
}

MaskHistogram hit_miss_histogram(const BallModelParams& params, double a, std::uint64_t replications,
                                 std::uint64_t seed, const HitMissOptions& options) {
    if (!(a > 0)) throw ConfigError("grid width must be positive");
    if (replications == 0) throw ConfigError("replications must be >= 1");
    const double reach = params.radius.max() + a * std::sqrt(3.0);
    const double mean_count = params.gamma * 4.0 / 3.0 * std::numbers::pi * reach * reach * reach;

    std::array<Vector3d, 8> vertices;
    const VertexPermutation g = options.symmetry.value_or(SymmetryGroup::identity());
    for (int i = 0; i < 8; ++i) vertices[i] = options.offset + a * VertexSet::vertex(g[i]).cast<double>();

    const auto blocks = static_cast<std::int64_t>((replications + kBlock - 1) / kBlock);
    std::vector<std::array<std::uint64_t, kNumMasks>> partial(blocks);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t blk = 0; blk < blocks; ++blk) {
        auto& counts = partial[blk];
        counts.fill(0);
        const std::uint64_t first = static_cast<std::uint64_t>(blk) * kBlock;
        const std::uint64_t last = std::min(replications, first + kBlock);
        for (std::uint64_t rep = first; rep < last; ++rep) {
            RandomStream rng(seed, rep);
            const std::uint64_t n = rng.poisson(mean_count);
            std::uint8_t black = 0;
            for (std::uint64_t k = 0; k < n; ++k) {
                Ball b;
                b.center = options.offset + uniform_in_ball(rng, reach);
                b.radius = params.radius.quantile(rng.uniform01());
                for (int i = 0; i < 8; ++i) {
                    if (covers(b, vertices[i])) black |= static_cast<std::uint8_t>(1u << i);
                }
            }
            ++counts[black];
        }
    }

    MaskHistogram out;
    out.replications = replications;
    for (const auto& counts : partial) {
        for (int m = 0; m < kNumMasks; ++m) out.counts[m] += counts[m];
    }
    return out;
}

McEstimate hit_miss_mc(ClassId j, const BallModelParams& params, double a, std::uint64_t replications,
                       std::uint64_t seed) {
    if (j < 1 || j > kNumClassesWithEmpty) throw ConfigError("class id must be in 1..22");
    return hit_miss_histogram(params, a, replications, seed).class_mean(j);
}

McEstimate dilated_volume_mc(VertexSet s, const BallModelParams& params, double a, std::uint64_t n_samples,
                             std::uint64_t seed) {
    if (s.empty()) throw ConfigError("point set must be nonempty");
    if (!(a >= 0)) throw ConfigError("grid width must be >= 0");
    if (n_samples < 2) throw ConfigError("need at least two samples");
    std::vector<Vector3d> centers;
    for (const auto& p : s.points()) centers.push_back(-a * p.cast<double>());
    Vector3d lo = centers.front(), hi = centers.front();
    for (const auto& c : centers) {
        lo = lo.cwiseMin(c);
        hi = hi.cwiseMax(c);
    }

    // V = |ball| + |union minus first ball|; only the second term is sampled
    const auto blocks = static_cast<std::int64_t>((n_samples + kBlock - 1) / kBlock);
    std::vector<double> sums(blocks), squares(blocks);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t blk = 0; blk < blocks; ++blk) {
        RandomStream rng(seed, static_cast<std::uint64_t>(blk));
        const std::uint64_t first = static_cast<std::uint64_t>(blk) * kBlock;
        const std::uint64_t last = std::min(n_samples, first + kBlock);
        double sum = 0, square = 0;
        for (std::uint64_t k = first; k < last; ++k) {
            const double r = params.radius.quantile(rng.uniform01());
            const Vector3d box_lo = lo.array() - r;
            const Vector3d extent = (hi - lo).array() + 2 * r;
            const Vector3d x(box_lo.x() + extent.x() * rng.uniform01(), box_lo.y() + extent.y() * rng.uniform01(),
                             box_lo.z() + extent.z() * rng.uniform01());
            double value = 4.0 / 3.0 * std::numbers::pi * r * r * r;
            if (!covers({centers.front(), r}, x) &&
                std::any_of(centers.begin() + 1, centers.end(), [&](const Vector3d& c) { return covers({c, r}, x); })) {
                value += extent.prod();
            }
            sum += value;
            square += value * value;
        }
        sums[blk] = sum;
        squares[blk] = square;
    }
    double sum = 0, square = 0;
    for (std::int64_t blk = 0; blk < blocks; ++blk) {
        sum += sums[blk];
        square += squares[blk];
    }
    const double n = static_cast<double>(n_samples);
    const double mean = sum / n;
    const double var = std::max(0.0, (square / n - mean * mean) * n / (n - 1));
    return {mean, std::sqrt(var / n)};
}

McEstimate miss_probability_oracle(VertexSet s, const BallModelParams& params, double a, std::uint64_t n_samples,
                                   std::uint64_t seed) {
    const McEstimate volume = dilated_volume_mc(s, params, a, n_samples, seed);
    const double p = std::exp(-params.gamma * volume.value);
    return {p, p * params.gamma * volume.std_error};
}

}  // namespace boolvox
