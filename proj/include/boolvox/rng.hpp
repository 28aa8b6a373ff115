// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace boolvox {

/// Philox4x32-10 block cipher (Salmon et al.). Stateless: block(counter, key).
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static constexpr Counter block(Counter ctr, Key key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
        }
        return ctr;
    }
};

/// Independent random stream addressed by (seed, stream id). Draw n of stream s is a pure
/// function of (seed, s, n), so streams can be consumed in any order or thread.
class RandomStream {
  public:
    RandomStream(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream) {}

    std::uint32_t next_u32() {
        if (used_ == 4) refill();
        return buffer_[used_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t hi = next_u32();
        return (hi << 32) | next_u32();
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Poisson variate by sequential inversion; large means are split into chunks of at
    /// most 10 so the result only depends on exp() of small arguments.
    std::uint64_t poisson(double mean) {
        std::uint64_t total = 0;
        while (mean > 0) {
            const double chunk = mean > 10.0 ? 10.0 : mean;
            mean -= chunk;
            double p = std::exp(-chunk);
            double cdf = p;
            const double u = uniform01();
            std::uint64_t k = 0;
            while (u >= cdf && p > 0) {
                ++k;
                p *= chunk / static_cast<double>(k);
                cdf += p;
            }
            total += k;
        }
        return total;
    }

  private:
    void refill() {
        const Philox4x32::Counter ctr{static_cast<std::uint32_t>(draw_), static_cast<std::uint32_t>(draw_ >> 32),
                                      static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
        buffer_ = Philox4x32::block(ctr, key_);
        ++draw_;
        used_ = 0;
    }

    Philox4x32::Key key_;
    std::uint64_t stream_;
    std::uint64_t draw_ = 0;
    Philox4x32::Counter buffer_{};
    int used_ = 4;
};

/// SplitMix64 finalizer; used to derive seeds for independent experiment stages.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) { return mix64(seed ^ mix64(tag)); }

}  // namespace boolvox
