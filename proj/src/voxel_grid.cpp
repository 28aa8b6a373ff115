// SPDX-License-Identifier: Apache-2.0
#include "boolvox/voxel_grid.hpp"

#include "boolvox/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace boolvox {

VoxelGrid::VoxelGrid(int nx, int ny, int nz, double a, Vector3d origin)
    : nx_(nx), ny_(ny), nz_(nz), a_(a), origin_(std::move(origin)), words_per_row_((nx + 63) / 64) {
    if (nx < 2 || ny < 2 || nz < 2) throw ConfigError("grid needs at least 2 points per axis");
    if (!(a > 0)) throw ConfigError("grid width must be positive");
    words_.assign(static_cast<std::size_t>(words_per_row_) * ny * nz, 0);
}

void VoxelGrid::set(int i, int j, int k, bool value) {
    auto& word = row(j, k)[i >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    word = value ? (word | bit) : (word & ~bit);
}

void VoxelGrid::set_range(int i0, int i1, int j, int k) {
    auto r = row(j, k);
    for (int w = i0 >> 6; w <= (i1 >> 6); ++w) {
        const int lo = std::max(i0, w * 64) - w * 64;
        const int hi = std::min(i1, w * 64 + 63) - w * 64;
        const std::uint64_t upper = hi == 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << (hi + 1)) - 1;
        r[w] |= upper & (~std::uint64_t{0} << lo);
    }
}

void VoxelGrid::fill(bool value) {
    if (!value) {
        std::fill(words_.begin(), words_.end(), 0);
        return;
    }
    for (int k = 0; k < nz_; ++k)
        for (int j = 0; j < ny_; ++j) set_range(0, nx_ - 1, j, k);
}

std::uint64_t VoxelGrid::count_ones() const {
    std::uint64_t total = 0;
    for (auto w : words_) total += static_cast<std::uint64_t>(std::popcount(w));
    return total;
}

int lattice_steps(double window, double a) {
    if (!(window > 0) || !(a > 0)) throw ConfigError("window side and grid width must be positive");
    const double ratio = window / a;
    const double n = std::round(ratio);
    if (n < 1 || std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio) || n > 1 << 20) {
        std::ostringstream msg;
        msg << "L / a = " << window << " / " << a << " is not a positive integer";
        throw ConfigError(msg.str());
    }
    return static_cast<int>(n);
}

VoxelGrid digitize(const Realization& real, double a) {
    const int n = lattice_steps(real.window(), a);
    VoxelGrid grid(n + 1, n + 1, n + 1, a);
    auto index_floor = [&](double t) { return static_cast<int>(std::clamp(std::floor(t / a), -1.0, n + 1.0)); };
    auto index_ceil = [&](double t) { return static_cast<int>(std::clamp(std::ceil(t / a), -1.0, n + 1.0)); };

    for (const Ball& b : real.balls()) {
        const double r2 = b.radius * b.radius;
        const double slack = 1e-12 * r2;
        const int k0 = std::max(0, index_ceil(b.center.z() - b.radius) - 1);
        const int k1 = std::min(n, index_floor(b.center.z() + b.radius) + 1);
        for (int k = k0; k <= k1; ++k) {
            const double dz = grid.point(0, 0, k).z() - b.center.z();
            const double rem_z = r2 - dz * dz;
            if (rem_z < -slack) continue;
            const double hy = std::sqrt(std::max(rem_z, 0.0));
            const int j0 = std::max(0, index_ceil(b.center.y() - hy) - 1);
            const int j1 = std::min(n, index_floor(b.center.y() + hy) + 1);
            for (int j = j0; j <= j1; ++j) {
                const double dy = grid.point(0, j, 0).y() - b.center.y();
                const double rem = rem_z - dy * dy;
                if (rem < -slack) continue;
                const double hx = std::sqrt(std::max(rem, 0.0));
                // candidate range padded by one site, then trimmed with the exact predicate
                int i0 = std::max(0, index_ceil(b.center.x() - hx) - 1);
                int i1 = std::min(n, index_floor(b.center.x() + hx) + 1);
                while (i0 <= i1 && !covers(b, grid.point(i0, j, k))) ++i0;
                while (i1 >= i0 && !covers(b, grid.point(i1, j, k))) --i1;
                if (i0 <= i1) grid.set_range(i0, i1, j, k);
            }
        }
    }
    return grid;
}

VoxelGrid digitize_naive(const Realization& real, double a) {
    const int n = lattice_steps(real.window(), a);
    VoxelGrid grid(n + 1, n + 1, n + 1, a);
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n; ++i) {
                if (real.contains(grid.point(i, j, k))) grid.set(i, j, k);
            }
    return grid;
}

std::uint64_t ConfigHistogram::window_total() const {
    std::uint64_t total = 0;
    for (auto c : mask_counts) total += c;
    return total;
}

std::uint64_t ConfigHistogram::class_count(ClassId j) const {
    const auto& lookup = ClassTable::instance().lookup();
    std::uint64_t total = 0;
    for (int m = 0; m < kNumMasks; ++m) {
        if (lookup[m] == j) total += mask_counts[m];
    }
    return total;
}

std::array<std::uint64_t, kNumClassesWithEmpty> ConfigHistogram::class_counts() const {
    const auto& lookup = ClassTable::instance().lookup();
    std::array<std::uint64_t, kNumClassesWithEmpty> out{};
    for (int m = 0; m < kNumMasks; ++m) out[lookup[m] - 1] += mask_counts[m];
    return out;
}

std::uint64_t ConfigHistogram::black_anchors() const {
    std::uint64_t total = 0;
    for (int m = 1; m < kNumMasks; m += 2) total += mask_counts[m];
    return total;
}

ConfigHistogram& ConfigHistogram::operator+=(const ConfigHistogram& other) {
    for (int m = 0; m < kNumMasks; ++m) mask_counts[m] += other.mask_counts[m];
    return *this;
}

namespace {

// 8x8 bit-matrix transpose; byte r bit c <-> byte c bit r.
inline std::uint64_t transpose8(std::uint64_t x) {
    std::uint64_t t;
    t = (x ^ (x >> 7)) & 0x00AA00AA00AA00AAull;
    x ^= t ^ (t << 7);
    t = (x ^ (x >> 14)) & 0x0000CCCC0000CCCCull;
    x ^= t ^ (t << 14);
    t = (x ^ (x >> 28)) & 0x00000000F0F0F0F0ull;
    x ^= t ^ (t << 28);
    return x;
}

// Bit i of the result is bit i + 1 of the row.
inline std::uint64_t shifted(std::span<const std::uint64_t> row, int w) {
    const std::uint64_t next = (w + 1 < static_cast<int>(row.size())) ? row[w + 1] : 0;
    return (row[w] >> 1) | (next << 63);
}

void count_slab(const VoxelGrid& grid, int k, std::array<std::uint64_t, kNumMasks>& hist) {
    const int windows_x = grid.nx() - 1;
    const int words = (windows_x + 63) / 64;
    // four interleaved histograms break store-to-load dependencies on repeated masks
    std::array<std::array<std::uint32_t, kNumMasks>, 4> local{};
    std::uint64_t flushed = 0;
    auto flush = [&] {
        for (auto& h : local) {
            for (int m = 0; m < kNumMasks; ++m) hist[m] += h[m];
            h.fill(0);
        }
        flushed = 0;
    };

    for (int j = 0; j + 1 < grid.ny(); ++j) {
        const auto r00 = grid.row(j, k);
        const auto r10 = grid.row(j + 1, k);
        const auto r01 = grid.row(j, k + 1);
        const auto r11 = grid.row(j + 1, k + 1);
        for (int w = 0; w < words; ++w) {
            // plane v holds vertex v = dx + 2 dy + 4 dz of the windows anchored at bits of word w
            const std::array<std::uint64_t, 8> plane = {r00[w], shifted(r00, w), r10[w], shifted(r10, w),
                                                        r01[w], shifted(r01, w), r11[w], shifted(r11, w)};
            const int valid = std::min(64, windows_x - 64 * w);
            const std::uint64_t valid_mask = valid == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << valid) - 1;
            std::uint64_t any = 0, all = ~std::uint64_t{0};
            for (auto p : plane) {
                any |= p;
                all &= p;
            }
            if ((any & valid_mask) == 0) {
                hist[0x00] += static_cast<std::uint64_t>(valid);
                continue;
            }
            if ((all & valid_mask) == valid_mask) {
                hist[0xFF] += static_cast<std::uint64_t>(valid);
                continue;
            }
            const int bytes = (valid + 7) / 8;
            for (int byte = 0; byte < bytes; ++byte) {
                std::uint64_t gathered = 0;
                for (int v = 0; v < 8; ++v) gathered |= ((plane[v] >> (8 * byte)) & 0xFF) << (8 * v);
                const std::uint64_t masks = transpose8(gathered);
                const int lanes = std::min(8, valid - 8 * byte);
                for (int t = 0; t < lanes; ++t) ++local[t & 3][(masks >> (8 * t)) & 0xFF];
            }
            if (++flushed == (1u << 24)) flush();
        }
    }
    flush();
}

}  // namespace

ConfigHistogram count_configurations(const VoxelGrid& grid) {
    const int slabs = grid.nz() - 1;
    std::vector<std::array<std::uint64_t, kNumMasks>> partial(slabs);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < slabs; ++k) {
        partial[k].fill(0);
        count_slab(grid, k, partial[k]);
    }
    ConfigHistogram out;
    for (const auto& h : partial) {
        for (int m = 0; m < kNumMasks; ++m) out.mask_counts[m] += h[m];
    }
    return out;
}

ConfigHistogram count_configurations_naive(const VoxelGrid& grid) {
    ConfigHistogram out;
    for (int k = 0; k + 1 < grid.nz(); ++k)
        for (int j = 0; j + 1 < grid.ny(); ++j)
            for (int i = 0; i + 1 < grid.nx(); ++i) {
                unsigned mask = 0;
                for (int v = 0; v < 8; ++v) {
                    if (grid.get(i + (v & 1), j + ((v >> 1) & 1), k + ((v >> 2) & 1))) mask |= 1u << v;
                }
                ++out.mask_counts[mask];
            }
    return out;
}

}  // namespace boolvox
