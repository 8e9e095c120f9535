// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace walklab {

// SplitMix64 finalizer. Used for seed expansion only.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Counter-based uniform generator: Philox4x32-10 keyed by a 64-bit seed,
/// with the 128-bit counter laid out as (block index, stream id). Every
/// (seed, stream, draw) triple maps to a unique cipher input, so replica
/// streams never overlap and draws are independent of evaluation order.
///
/// Salmon et al., "Parallel random numbers: as easy as 1, 2, 3", SC 2011.
class RandomStream {
  public:
    RandomStream() = default;
    RandomStream(std::uint64_t seed, std::uint64_t stream_id)
        : key0_(static_cast<std::uint32_t>(seed)),
          key1_(static_cast<std::uint32_t>(seed >> 32)),
          stream_(stream_id) {}

    std::uint64_t next_u64() {
        if (have_ == 0) {
            fill_block();
            have_ = 2;
        }
        const int idx = (have_ == 2) ? 0 : 2;
        --have_;
        return static_cast<std::uint64_t>(buf_[idx]) |
               (static_cast<std::uint64_t>(buf_[idx + 1]) << 32);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  private:
    static void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                          std::uint32_t& lo) {
        const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
        hi = static_cast<std::uint32_t>(prod >> 32);
        lo = static_cast<std::uint32_t>(prod);
    }

    void fill_block() {
        std::uint32_t c0 = static_cast<std::uint32_t>(block_);
        std::uint32_t c1 = static_cast<std::uint32_t>(block_ >> 32);
        std::uint32_t c2 = static_cast<std::uint32_t>(stream_);
        std::uint32_t c3 = static_cast<std::uint32_t>(stream_ >> 32);
        std::uint32_t k0 = key0_;
        std::uint32_t k1 = key1_;
        for (int round = 0; round < 10; ++round) {
            std::uint32_t hi0, lo0, hi1, lo1;
            mul_hi_lo(0xD2511F53u, c0, hi0, lo0);
            mul_hi_lo(0xCD9E8D57u, c2, hi1, lo1);
            const std::uint32_t n0 = hi1 ^ c1 ^ k0;
            const std::uint32_t n1 = lo1;
            const std::uint32_t n2 = hi0 ^ c3 ^ k1;
            const std::uint32_t n3 = lo0;
            c0 = n0;
            c1 = n1;
            c2 = n2;
            c3 = n3;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        buf_[0] = c0;
        buf_[1] = c1;
        buf_[2] = c2;
        buf_[3] = c3;
        ++block_;
    }

    std::uint32_t key0_ = 0;
    std::uint32_t key1_ = 0;
    std::uint64_t stream_ = 0;
    std::uint64_t block_ = 0;
    std::uint32_t buf_[4] = {0, 0, 0, 0};
    int have_ = 0;
};

}  // namespace walklab
