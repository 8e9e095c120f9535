// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "walklab/params.hpp"

namespace walklab {

/// Knobs of the thick-point pair counter F_n and the predicates D, E.
struct ThickPointParams {
    double epsilon = 0.3;
    double lambda = 1.4426950408889634;

    /// Admissibility: (1+d)(1-e)^2 > 1+d/2. The counters are defined for
    /// any epsilon in (0, 1), but the (D and E) failure frequency only
    /// decays inside this regime; callers should report the flag.
    bool epsilon_admissible(double delta) const {
        return (1.0 + delta) * (1.0 - epsilon) * (1.0 - epsilon) > 1.0 + delta / 2.0;
    }

    /// Thickness threshold (1-e) * lambda * ln n.
    double threshold(std::uint64_t n) const;
    /// Inner window width floor(2 * lambda * ln n).
    std::uint64_t window(std::uint64_t n) const;
};

/// F_n: ordered pairs of times 1 <= i < j <= min(i + window, n) whose sites
/// are distinct, both with local time at the final n at least the
/// threshold, and with neither site revisited strictly between i and j.
/// Reference implementation, quadratic in the window; the ground truth the
/// optimized counters are tested against.
std::uint64_t count_thick_pairs_naive(std::span<const std::int64_t> path,
                                      const ThickPointParams& tp);

/// Same count, skipping non-thick times early.
std::uint64_t count_thick_pairs(std::span<const std::int64_t> path, const ThickPointParams& tp);

/// Incremental form of the counter for streaming use: feed positions
/// S_1..S_n in time order. Because j - i never exceeds the window, only a
/// ring of recent positions is retained; local times at the final n come
/// from a caller-supplied lookup (two-pass usage: build the ledger first,
/// replay the same stream through the scanner).
template <class CountFn>
class ThickPairScanner {
  public:
    ThickPairScanner(std::uint64_t n, const ThickPointParams& tp, CountFn count_at_n)
        : lookup_(std::move(count_at_n)), threshold_(tp.threshold(n)), window_(tp.window(n)) {
        ring_.assign(static_cast<std::size_t>(window_) + 1, 0);
        thick_.assign(static_cast<std::size_t>(window_) + 1, 0);
    }

    void push(std::uint64_t time, std::int64_t site) {
        const bool thick = static_cast<double>(lookup_(site)) >= threshold_;
        ring_[slot(time)] = site;
        thick_[slot(time)] = thick ? 1 : 0;
        if (!thick || window_ == 0) return;
        const std::uint64_t lo = time > window_ ? time - window_ : 1;
        for (std::uint64_t i = time; i-- > lo;) {
            if (!thick_[slot(i)]) continue;
            const std::int64_t other = ring_[slot(i)];
            if (other != site && !revisited_between(i, time, other, site)) ++pairs_;
        }
    }

    std::uint64_t pairs() const { return pairs_; }

  private:
    std::size_t slot(std::uint64_t time) const {
        return static_cast<std::size_t>(time % ring_.size());
    }

    bool revisited_between(std::uint64_t i, std::uint64_t j, std::int64_t a,
                           std::int64_t b) const {
        for (std::uint64_t t = i + 1; t < j; ++t) {
            const std::int64_t s = ring_[slot(t)];
            if (s == a || s == b) return true;
        }
        return false;
    }

    CountFn lookup_;
    std::vector<std::int64_t> ring_;
    std::vector<char> thick_;
    double threshold_;
    std::uint64_t window_;
    std::uint64_t pairs_ = 0;
};

/// D_n: (1 - e/2) lambda ln n <= xi(n) <= 2 (1 + e/2) lambda ln n.
bool predicate_d(std::uint32_t max_count, std::uint64_t n, const ThickPointParams& tp);

/// E_n: F_n = 0.
bool predicate_e(std::span<const std::int64_t> path, const ThickPointParams& tp);

}  // namespace walklab
