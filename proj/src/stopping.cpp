// SPDX-License-Identifier: Apache-2.0
#include "walklab/stopping.hpp"

#include <algorithm>

namespace walklab {

std::uint32_t StoppingLog::on_count_reached(std::int64_t site, std::uint32_t m,
                                            std::uint64_t time) {
    if (m < 1) throw std::logic_error("stopping log: count levels start at 1");
    if (time <= last_time_) {
        throw std::logic_error("stopping log: events must arrive in strict time order");
    }
    if (levels_.size() <= m) levels_.resize(m + 1);
    Level& level = levels_[m];
    const std::uint32_t k = level.frontier + 1;
    if (k == 1) {
        level.t1 = time;
        if (m >= 2) {
            Level& below = levels_[m - 1];
            if (below.gap.has_value()) {
                throw std::logic_error("stopping log: duplicate level-opening record");
            }
            below.gap = below.frontier;
            if (mode_ == Mode::compact) {
                below.records.clear();
                below.records.shrink_to_fit();
            }
        }
        max_level_ = std::max(max_level_, m);
    }
    level.frontier = k;
    const bool keep = mode_ == Mode::full || m >= max_level_;
    if (keep) {
        if (level.records.size() != static_cast<std::size_t>(k - 1) && mode_ == Mode::full) {
            throw std::logic_error("stopping log: duplicate (m, k) record");
        }
        level.records.push_back(StopRecord{time, site});
    }
    last_time_ = time;
    return k;
}

std::optional<StopRecord> StoppingLog::record(std::uint32_t m, std::uint32_t k) const {
    if (k < 1 || m < 1 || m >= levels_.size()) return std::nullopt;
    const Level& level = levels_[m];
    if (k > level.records.size()) return std::nullopt;
    return level.records[k - 1];
}

std::optional<std::uint64_t> StoppingLog::first_time(std::uint32_t m) const {
    if (m < 1 || m >= levels_.size() || levels_[m].frontier == 0) return std::nullopt;
    return levels_[m].t1;
}

std::optional<std::uint32_t> StoppingLog::gap(std::uint32_t m) const {
    if (m < 1 || m >= levels_.size()) return std::nullopt;
    return levels_[m].gap;
}

namespace {

// Right end U = T_m^k /\ T_{m+1}^1 of window (m, k), when determined by the
// records seen so far. Missing records lie beyond the horizon, so a single
// resolved side determines the minimum.
std::optional<std::uint64_t> window_end(const StoppingLog& log, std::uint32_t m,
                                        std::uint32_t k) {
    const auto rec_k = log.record(m, k);
    const auto t_next = log.first_time(m + 1);
    if (rec_k && t_next) return std::min(rec_k->time, *t_next);
    if (rec_k) return rec_k->time;
    if (t_next) return *t_next;
    return std::nullopt;
}

}  // namespace

TriState detect_a(std::span<const std::int64_t> path, const StoppingLog& log, std::uint32_t m,
                  std::uint32_t k) {
    if (k < 1) throw std::invalid_argument("detect_a: k must be >= 1");
    if (k == 1) return TriState::True;  // the sure event
    const auto end = window_end(log, m, k);
    if (!end) return TriState::Censored;
    const auto prev = log.record(m, k - 1);
    if (!prev || *end < prev->time) return TriState::True;  // empty window
    const std::uint64_t t = prev->time;
    const std::uint64_t u = *end;
    if (u >= path.size()) throw std::out_of_range("detect_a: path shorter than the window");
    for (std::uint64_t n = t + 1; n <= u; ++n) {
        if (path[n] == prev->site) return TriState::False;
    }
    if (k >= 3) {
        std::vector<std::int64_t> forbidden;
        for (std::uint32_t j = 1; j + 2 <= k; ++j) forbidden.push_back(log.record(m, j)->site);
        for (std::uint64_t n = t; n <= u; ++n) {
            if (2 * n < 2 * t + m) continue;
            if (std::find(forbidden.begin(), forbidden.end(), path[n]) != forbidden.end()) {
                return TriState::False;
            }
        }
    }
    return TriState::True;
}

TriState detect_atilde(std::span<const std::int64_t> path, const StoppingLog& log,
                       std::uint32_t m, std::uint32_t k) {
    if (k < 2) throw std::invalid_argument("detect_atilde: defined for k >= 2 only");
    if (k == 2) return TriState::True;  // no locations to avoid
    const auto end = window_end(log, m, k);
    if (!end) return TriState::Censored;
    const auto prev = log.record(m, k - 1);
    if (!prev || *end < prev->time) return TriState::True;
    const std::uint64_t t = prev->time;
    const std::uint64_t u = *end;
    if (u >= path.size()) throw std::out_of_range("detect_atilde: path shorter than the window");
    std::vector<std::int64_t> forbidden;
    for (std::uint32_t j = 1; j + 2 <= k; ++j) forbidden.push_back(log.record(m, j)->site);
    for (std::uint64_t n = t; n <= u; ++n) {
        if (2 * n >= 2 * t + m) break;
        if (std::find(forbidden.begin(), forbidden.end(), path[n]) != forbidden.end()) {
            return TriState::False;
        }
    }
    return TriState::True;
}

TriState detect_c(std::span<const std::int64_t> path, const StoppingLog& log, std::uint32_t m,
                  std::uint32_t k) {
    if (k < 1) throw std::invalid_argument("detect_c: k must be >= 1");
    const auto rec_k = log.record(m, k);
    // Level closed: C_m^k holds exactly for k <= G_m (records keep arriving
    // for closed levels, so record existence alone is not the event).
    // k = 1 is sure: the site reaching m + 1 passed m strictly earlier.
    TriState route1 = TriState::Censored;
    if (k == 1) {
        route1 = TriState::True;
    } else if (const auto g = log.gap(m)) {
        route1 = k <= *g ? TriState::True : TriState::False;
    } else if (k <= log.frontier(m)) {
        route1 = TriState::True;
    }

    TriState route2 = TriState::True;
    for (std::uint32_t j = 1; j <= k; ++j) route2 = tri_and(route2, detect_a(path, log, m, j));
    for (std::uint32_t j = 2; j <= k; ++j) {
        route2 = tri_and(route2, detect_atilde(path, log, m, j));
    }

    if (route1 != TriState::Censored) {
        if (route2 != route1) {
            throw detector_mismatch_error("C-event routes disagree (times vs window scans)");
        }
        if (route1 == TriState::True && rec_k) {
            // Replay the ledger to T_m^k: it must show xi = m with exactly
            // k favorite sites.
            LocalTimeLedger<MapSiteCounts> replay;
            for (std::uint64_t n = 1; n <= rec_k->time; ++n) replay.record_visit(path[n], n);
            if (replay.max_count() != m || replay.favorite_count() != k) {
                throw detector_mismatch_error("ledger replay disagrees at T_m^k");
            }
        }
        return route1;
    }
    return route2;
}

TriState detect_c_record(std::span<const std::int64_t> path, const StoppingLog& log,
                         std::uint32_t m, std::uint32_t k) {
    if (k < 1) throw std::invalid_argument("detect_c_record: k must be >= 1");
    const std::uint64_t horizon = path.size() - 1;
    for (std::uint32_t j = 1; j <= k; ++j) {
        const std::uint64_t t_prev = j == 1 ? 0 : log.record(m, j - 1)->time;
        const std::int64_t base = path[t_prev];
        const auto rec = log.record(m, j);
        const std::uint64_t until = rec ? rec->time : horizon;
        for (std::uint64_t n = t_prev + 1; n <= until; ++n) {
            if (path[n] <= base) return TriState::False;
        }
        if (!rec) return TriState::Censored;
    }
    return TriState::True;
}

std::optional<std::uint32_t> gap_statistic(const StoppingLog& log, std::uint32_t m) {
    return log.gap(m);
}

EventVerdict evaluate_events(std::span<const std::int64_t> path, const StoppingLog& log,
                             std::uint32_t m, std::uint32_t k) {
    EventVerdict v;
    v.a = detect_a(path, log, m, k);
    v.atilde = k >= 2 ? detect_atilde(path, log, m, k) : TriState::True;
    v.b = TriState::True;
    for (std::uint32_t j = 1; j <= k; ++j) v.b = tri_and(v.b, detect_a(path, log, m, j));
    v.btilde = TriState::True;
    for (std::uint32_t j = 2; j <= k; ++j) v.btilde = tri_and(v.btilde, detect_atilde(path, log, m, j));
    v.c = detect_c(path, log, m, k);
    v.c_record = detect_c_record(path, log, m, k);
    if (v.c != TriState::Censored) {
        const auto rec = log.record(m, k);
        const auto t1 = log.first_time(m + 1);
        if (v.c == TriState::True && rec) {
            v.resolve_time = rec->time;
        } else if (t1) {
            v.resolve_time = *t1;
        }
    }
    return v;
}

WindowScans window_scans(const StoppingLog& log, std::uint32_t m, std::uint32_t k) {
    WindowScans scans;
    if (k < 2) return scans;
    const auto end = window_end(log, m, k);
    const auto prev = log.record(m, k - 1);
    if (!end || !prev || *end < prev->time) return scans;
    scans.resolved = true;
    scans.lo = prev->time;
    scans.hi = *end;
    for (std::uint64_t n = scans.lo; n <= scans.hi; ++n) {
        if (2 * n >= 2 * scans.lo + m) {
            scans.a_times.push_back(n);
        } else {
            scans.at_times.push_back(n);
        }
    }
    return scans;
}

HitResult hitting_time(std::span<const std::int64_t> path, std::span<const std::int64_t> sites,
                       std::uint64_t from, std::uint64_t cap, const WalkParams& params) {
    if (sites.empty()) throw std::invalid_argument("hitting_time: empty target set");
    if (from >= path.size()) throw std::out_of_range("hitting_time: start index past the path");
    const std::uint64_t last = std::min<std::uint64_t>(path.size() - 1, from + cap);
    for (std::uint64_t n = from; n <= last; ++n) {
        for (std::int64_t z : sites) {
            if (path[n] == z) return {n - from, 0.0};
        }
    }
    std::int64_t top = sites[0];
    for (std::int64_t z : sites) top = std::max(top, z);
    const std::int64_t d = path[last] - top;
    const double h = params.q() / params.p;
    return {std::nullopt, d > 0 ? std::pow(h, static_cast<double>(d)) : 1.0};
}

}  // namespace walklab
