// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "walklab/params.hpp"
#include "walklab/walk.hpp"

namespace walklab {

/// Visit-count storage keyed by signed site. Default choice.
class MapSiteCounts {
  public:
    std::uint32_t get(std::int64_t site) const {
        auto it = counts_.find(site);
        return it == counts_.end() ? 0 : it->second;
    }
    std::uint32_t bump(std::int64_t site) { return ++counts_[site]; }
    std::size_t distinct_sites() const { return counts_.size(); }

    template <class F>
    void for_each(F&& f) const {
        for (const auto& [site, count] : counts_) f(site, count);
    }

  private:
    std::unordered_map<std::int64_t, std::uint32_t> counts_;
};

/// Dense offset-array storage covering [lo, lo + size). Faster for long
/// runs where the visited range is a contiguous band around the start.
class DenseSiteCounts {
  public:
    std::uint32_t get(std::int64_t site) const {
        if (counts_.empty() || site < lo_ || site >= lo_ + static_cast<std::int64_t>(counts_.size()))
            return 0;
        return counts_[static_cast<std::size_t>(site - lo_)];
    }

    std::uint32_t bump(std::int64_t site) {
        if (counts_.empty()) {
            lo_ = site - 4;
            counts_.assign(9, 0);
        } else if (site < lo_ || site >= lo_ + static_cast<std::int64_t>(counts_.size())) {
            grow_to(site);
        }
        return ++counts_[static_cast<std::size_t>(site - lo_)];
    }

    std::size_t distinct_sites() const {
        std::size_t n = 0;
        for (std::uint32_t c : counts_) n += (c != 0);
        return n;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < counts_.size(); ++i) {
            if (counts_[i] != 0) f(lo_ + static_cast<std::int64_t>(i), counts_[i]);
        }
    }

  private:
    void grow_to(std::int64_t site) {
        std::int64_t new_lo = lo_;
        std::int64_t new_hi = lo_ + static_cast<std::int64_t>(counts_.size());  // exclusive
        while (site < new_lo) new_lo -= std::max<std::int64_t>(16, (new_hi - new_lo));
        while (site >= new_hi) new_hi += std::max<std::int64_t>(16, (new_hi - new_lo));
        std::vector<std::uint32_t> next(static_cast<std::size_t>(new_hi - new_lo), 0);
        std::copy(counts_.begin(), counts_.end(), next.begin() + static_cast<std::size_t>(lo_ - new_lo));
        counts_ = std::move(next);
        lo_ = new_lo;
    }

    std::vector<std::uint32_t> counts_;
    std::int64_t lo_ = 0;
};

/// Streaming occupation statistics of one walk: per-site visit counts
/// xi(z, n), the running maximum xi(n), the favorite set K(n), and the
/// cumulative tally g(k) = #{times with exactly k favorites}.
///
/// Time 0 is never counted: the local time counts visits at times
/// 1..n only, so the start site enters the ledger on its first revisit.
template <class Storage = MapSiteCounts>
class LocalTimeLedger {
  public:
    /// Record that step `time` (which must be clock()+1) visited `site`.
    /// Returns the site's new count.
    std::uint32_t record_visit(std::int64_t site, std::uint64_t time) {
        if (time != clock_ + 1) {
            throw std::logic_error("record_visit: visits must arrive in time order");
        }
        const std::uint32_t c = counts_.bump(site);
        if (c == max_count_ + 1) {
            max_count_ = c;
            favorites_.clear();
            favorites_.push_back(site);
            fav_min_ = fav_max_ = site;
        } else if (c == max_count_) {
            // A tie from below; the site cannot already be a favorite.
            favorites_.push_back(site);
            fav_min_ = std::min(fav_min_, site);
            fav_max_ = std::max(fav_max_, site);
        }
        if (g_tally_.size() <= favorites_.size()) g_tally_.resize(favorites_.size() + 1, 0);
        ++g_tally_[favorites_.size()];
        clock_ = time;
        return c;
    }

    std::uint64_t clock() const { return clock_; }
    std::uint32_t max_count() const { return max_count_; }
    std::uint32_t count(std::int64_t site) const { return counts_.get(site); }

    std::size_t favorite_count() const { return favorites_.size(); }
    std::int64_t favorite_min() const { return fav_min_; }
    std::int64_t favorite_max() const { return fav_max_; }

    /// K(n), sorted. Undefined at time 0.
    std::vector<std::int64_t> favorite_set() const {
        if (clock_ == 0) throw std::logic_error("favorite_set: K(0) is undefined");
        std::vector<std::int64_t> sites(favorites_);
        std::sort(sites.begin(), sites.end());
        return sites;
    }

    /// g(k) over times 1..clock(); 0 for k never attained.
    std::uint64_t g(std::size_t k) const { return k < g_tally_.size() ? g_tally_[k] : 0; }
    std::size_t g_max_index() const { return g_tally_.empty() ? 0 : g_tally_.size() - 1; }

    /// xi(n) / ln n. Requires clock >= 2.
    double max_ratio() const {
        if (clock_ < 2) throw std::logic_error("max_ratio requires n >= 2");
        return static_cast<double>(max_count_) / std::log(static_cast<double>(clock_));
    }

    const Storage& storage() const { return counts_; }

  private:
    Storage counts_;
    std::vector<std::int64_t> favorites_;
    std::vector<std::uint64_t> g_tally_{0};  // index k
    std::int64_t fav_min_ = 0;
    std::int64_t fav_max_ = 0;
    std::uint32_t max_count_ = 0;
    std::uint64_t clock_ = 0;
};

/// Result of a truncation-safe draw of a total local time xi(z, infinity).
struct TotalLocalTimeSample {
    std::int64_t site = 0;
    std::uint64_t count = 0;         ///< visits to `site` before stopping
    std::int64_t stop_position = 0;  ///< walk position when sampling stopped
    std::uint64_t steps = 0;         ///< steps consumed
    double bias_bound = 0.0;         ///< probability mass of uncounted later visits
};

/// Stopping distance: smallest d with h^d <= tolerance.
std::uint64_t stopping_distance(const WalkParams& params, double tolerance);

/// Draw xi(z, infinity) by running a fresh walk until it sits at least
/// d* = ceil(ln tol / ln h) above z, so any later visit to z has
/// probability at most h^(d*) <= tolerance.
TotalLocalTimeSample sample_total_local_time(const WalkParams& params, std::uint64_t seed,
                                             std::uint64_t stream_id, std::int64_t z,
                                             double tolerance,
                                             std::uint64_t step_cap = 100'000'000);

/// Same stopping rule applied to several sites at once (one shared walk,
/// stop above max(sites) + d*). counts[i] pairs with sites[i].
struct VisitCountsSample {
    std::vector<std::uint64_t> counts;
    std::int64_t stop_position = 0;
    std::uint64_t steps = 0;
    double bias_bound = 0.0;
};
VisitCountsSample sample_visit_counts(const WalkParams& params, std::uint64_t seed,
                                      std::uint64_t stream_id, std::span<const std::int64_t> sites,
                                      double tolerance, std::uint64_t step_cap = 100'000'000);

}  // namespace walklab
