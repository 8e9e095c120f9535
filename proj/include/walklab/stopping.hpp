// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "walklab/local_time.hpp"
#include "walklab/params.hpp"

namespace walklab {

enum class TriState : std::uint8_t { False = 0, True = 1, Censored = 2 };

inline TriState tri_and(TriState a, TriState b) {
    if (a == TriState::False || b == TriState::False) return TriState::False;
    if (a == TriState::Censored || b == TriState::Censored) return TriState::Censored;
    return TriState::True;
}

/// Thrown when the two independent computations of a C event disagree.
/// Must never happen on a correct build; the CLI maps it to exit code 4.
struct detector_mismatch_error : std::logic_error {
    using std::logic_error::logic_error;
};

struct StopRecord {
    std::uint64_t time = 0;  // T_m^k
    std::int64_t site = 0;   // L_m^k
};

/// The (m, k)-indexed stopping records: T_m^k is the first time the walk
/// has visited k distinct sites at least m times each, L_m^k the k-th such
/// site. G_m counts the level-m records that precede T_{m+1}^1.
///
/// In compact mode, per-record storage is kept only for the highest level
/// still running; closed levels keep their frontier, first time, and gap.
class StoppingLog {
  public:
    enum class Mode { full, compact };

    explicit StoppingLog(Mode mode = Mode::full) : mode_(mode) {}

    /// Feed one ledger event: `site` reached count m at step `time`.
    /// Exactly one such event exists per step. Returns the record index k.
    std::uint32_t on_count_reached(std::int64_t site, std::uint32_t m, std::uint64_t time);

    std::uint32_t frontier(std::uint32_t m) const {
        return m < levels_.size() ? levels_[m].frontier : 0;
    }
    std::optional<StopRecord> record(std::uint32_t m, std::uint32_t k) const;
    std::optional<std::uint64_t> first_time(std::uint32_t m) const;  // T_m^1
    std::optional<std::uint32_t> gap(std::uint32_t m) const;         // G_m
    std::uint32_t max_level() const { return max_level_; }
    std::uint64_t last_event_time() const { return last_time_; }
    Mode mode() const { return mode_; }

    template <class F>
    void for_each_record(F&& f) const {  // f(m, k, StopRecord)
        for (std::uint32_t m = 1; m < levels_.size(); ++m) {
            for (std::uint32_t k = 1; k <= levels_[m].records.size(); ++k) {
                f(m, k, levels_[m].records[k - 1]);
            }
        }
    }

  private:
    struct Level {
        std::vector<StopRecord> records;  // index k-1; trimmed on close in compact mode
        std::uint32_t frontier = 0;
        std::uint64_t t1 = 0;
        std::optional<std::uint32_t> gap;
    };

    std::vector<Level> levels_{Level{}};  // index m; slot 0 unused
    std::uint32_t max_level_ = 0;
    std::uint64_t last_time_ = 0;
    Mode mode_;
};

struct WindowVerdict {
    TriState a = TriState::Censored;
    TriState atilde = TriState::Censored;
    std::uint64_t resolve_time = 0;
};

struct AnalyzerOptions {
    StoppingLog::Mode log_mode = StoppingLog::Mode::full;
    bool retain_verdicts = false;  ///< keep per-(m,k) A / A-tilde verdicts
    bool self_check = true;        ///< cross-check the two C-event routes
};

/// Online walk analyzer: ledger, stopping log, and the event detectors in
/// one streaming pass, O(1) per step, no stored path.
///
/// Route 1 computes C_m^k from the stopping-time order T_m^k < T_{m+1}^1.
/// Route 2 scans positions against the recorded locations: per window
/// (m, k) it checks that L_m^(k-1) is avoided on (T_m^(k-1), U] and that
/// {L_m^1..L_m^(k-2)} is avoided on [T_m^(k-1), U], the latter split at
/// T_m^(k-1) + m/2 between the A and A-tilde clauses (compared exactly via
/// 2n against 2T + m, so the two scans partition the window). U is
/// T_m^k or T_{m+1}^1, whichever resolves the window, inclusive.
/// With self_check on, the routes are compared at every resolution point.
template <class Storage = DenseSiteCounts>
class PathAnalyzer {
  public:
    explicit PathAnalyzer(AnalyzerOptions opt = {})
        : log_(opt.log_mode), retain_(opt.retain_verdicts), self_check_(opt.self_check) {}

    void step(std::int64_t site, std::uint64_t time) {
        const std::uint32_t level = ledger_.max_count();
        const std::uint32_t c_old = ledger_.count(site);
        if (level >= 1 && c_old == level) {
            // The site is one of the current level's recorded locations,
            // so this step both violates the open window and closes the
            // level. Which clause it violates depends on the site and on
            // which side of T + m/2 the step falls.
            if (site == last_loc_) {
                a2_ok_ = false;
            } else if (2 * time >= 2 * t_last_ + level) {
                af1_ok_ = false;
            } else {
                at1_ok_ = false;
            }
        }
        const std::uint32_t c_new = ledger_.record_visit(site, time);
        if (c_new > level) {
            if (level >= 1) close_level(level, time);
            log_.on_count_reached(site, c_new, time);
            if (self_check_ && level >= 1 && log_.gap(level) != frontier_) {
                throw detector_mismatch_error("gap statistic disagrees with record frontier");
            }
            frontier_ = 1;
            open_window(time, site);
            b_run_ = bt_run_ = true;
        } else if (c_new == level) {
            log_.on_count_reached(site, c_new, time);
            resolve_open_window(level, time, /*closing=*/false);
            ++frontier_;
            open_window(time, site);
            if (self_check_ &&
                (ledger_.max_count() != level || ledger_.favorite_count() != frontier_)) {
                throw detector_mismatch_error("ledger state disagrees at a stopping time");
            }
        } else {
            // A record for an already-closed level; no window is open there.
            log_.on_count_reached(site, c_new, time);
        }
    }

    const LocalTimeLedger<Storage>& ledger() const { return ledger_; }
    const StoppingLog& log() const { return log_; }

    /// C_m^k from the stopping-time order (route 1), with censoring.
    /// Once the level closes, C_m^k holds exactly for k <= G_m; while it is
    /// open, records so far are true and the rest is unresolved. (Records
    /// keep arriving for closed levels, so "record exists" is not enough.)
    TriState event_c(std::uint32_t m, std::uint32_t k) const {
        if (k < 1) throw std::invalid_argument("event_c: k must be >= 1");
        if (k == 1) return TriState::True;  // T_m^1 < T_{m+1}^1 on every path
        if (const auto g = log_.gap(m)) {
            return k <= *g ? TriState::True : TriState::False;
        }
        return k <= log_.frontier(m) ? TriState::True : TriState::Censored;
    }

    std::optional<std::uint32_t> gap(std::uint32_t m) const { return log_.gap(m); }

    /// Retained window verdict (requires retain_verdicts). k >= 2.
    WindowVerdict window_verdict(std::uint32_t m, std::uint32_t k) const;
    TriState event_a(std::uint32_t m, std::uint32_t k) const;
    TriState event_atilde(std::uint32_t m, std::uint32_t k) const;
    TriState event_b(std::uint32_t m, std::uint32_t k) const;
    TriState event_btilde(std::uint32_t m, std::uint32_t k) const;
    /// C_m^k recomputed from the scanned verdicts (route 2).
    TriState event_c_route2(std::uint32_t m, std::uint32_t k) const {
        return tri_and(event_b(m, k), event_btilde(m, k));
    }

  private:
    static std::uint64_t key(std::uint32_t m, std::uint32_t k) {
        return (static_cast<std::uint64_t>(m) << 32) | k;
    }

    void open_window(std::uint64_t time, std::int64_t site) {
        t_last_ = time;
        last_loc_ = site;
        a2_ok_ = af1_ok_ = at1_ok_ = true;
    }

    void resolve_open_window(std::uint32_t m, std::uint64_t time, bool closing) {
        const bool a = a2_ok_ && af1_ok_;
        const bool at = at1_ok_;
        if (retain_) {
            retained_[key(m, frontier_ + 1)] = {a ? TriState::True : TriState::False,
                                                at ? TriState::True : TriState::False, time};
        }
        const bool route2 = b_run_ && bt_run_ && a && at;
        if (self_check_ && route2 == closing) {
            // At a T_m^k resolution route 1 says C is true; at a level
            // close it says false. Route 2 must match exactly.
            throw detector_mismatch_error(closing
                                              ? "B-route true although T_{m+1}^1 came first"
                                              : "B-route false although T_m^k < T_{m+1}^1");
        }
        b_run_ = b_run_ && a;
        bt_run_ = bt_run_ && at;
    }

    void close_level(std::uint32_t m, std::uint64_t time) {
        if (self_check_ && !(b_run_ && bt_run_)) {
            throw detector_mismatch_error("resolved windows false on a still-open level");
        }
        resolve_open_window(m, time, /*closing=*/true);
    }

    LocalTimeLedger<Storage> ledger_;
    StoppingLog log_;
    std::unordered_map<std::uint64_t, WindowVerdict> retained_;
    std::uint64_t t_last_ = 0;
    std::int64_t last_loc_ = 0;
    std::uint32_t frontier_ = 0;
    bool a2_ok_ = true, af1_ok_ = true, at1_ok_ = true;
    bool b_run_ = true, bt_run_ = true;
    bool retain_;
    bool self_check_;
};

template <class Storage>
WindowVerdict PathAnalyzer<Storage>::window_verdict(std::uint32_t m, std::uint32_t k) const {
    auto it = retained_.find(key(m, k));
    return it == retained_.end() ? WindowVerdict{} : it->second;
}

template <class Storage>
TriState PathAnalyzer<Storage>::event_a(std::uint32_t m, std::uint32_t k) const {
    if (k < 1) throw std::invalid_argument("event_a: k must be >= 1");
    if (k == 1) return TriState::True;  // A_m^1 is the sure event
    auto it = retained_.find(key(m, k));
    if (it != retained_.end()) return it->second.a;
    // Unretained windows on a closed level start after T_{m+1}^1: empty scan.
    if (log_.first_time(m + 1)) return TriState::True;
    return TriState::Censored;
}

template <class Storage>
TriState PathAnalyzer<Storage>::event_atilde(std::uint32_t m, std::uint32_t k) const {
    if (k < 2) throw std::invalid_argument("event_atilde: defined for k >= 2 only");
    if (k == 2) return TriState::True;  // no locations precede L_m^1
    auto it = retained_.find(key(m, k));
    if (it != retained_.end()) return it->second.atilde;
    if (log_.first_time(m + 1)) return TriState::True;
    return TriState::Censored;
}

template <class Storage>
TriState PathAnalyzer<Storage>::event_b(std::uint32_t m, std::uint32_t k) const {
    TriState acc = TriState::True;
    for (std::uint32_t j = 2; j <= k; ++j) acc = tri_and(acc, event_a(m, j));
    return acc;
}

template <class Storage>
TriState PathAnalyzer<Storage>::event_btilde(std::uint32_t m, std::uint32_t k) const {
    TriState acc = TriState::True;
    for (std::uint32_t j = 2; j <= k; ++j) acc = tri_and(acc, event_atilde(m, j));
    return acc;
}

// ---------------------------------------------------------------------------
// Offline detectors over a stored path (tests, traces). Same window
// semantics as the online analyzer.

TriState detect_a(std::span<const std::int64_t> path, const StoppingLog& log, std::uint32_t m,
                  std::uint32_t k);
TriState detect_atilde(std::span<const std::int64_t> path, const StoppingLog& log, std::uint32_t m,
                       std::uint32_t k);
/// Route 1 vs route 2; throws detector_mismatch_error on disagreement.
/// When true, additionally verifies that at T_m^k the replayed ledger shows
/// xi = m with exactly k favorites.
TriState detect_c(std::span<const std::int64_t> path, const StoppingLog& log, std::uint32_t m,
                  std::uint32_t k);
/// Ascending-record chain: every window (T_m^(j-1), T_m^j] stays strictly
/// above the previous record position, j = 1..k.
TriState detect_c_record(std::span<const std::int64_t> path, const StoppingLog& log,
                         std::uint32_t m, std::uint32_t k);

std::optional<std::uint32_t> gap_statistic(const StoppingLog& log, std::uint32_t m);

/// One-stop verdict bundle for window (m, k), offline.
struct EventVerdict {
    TriState a = TriState::Censored;
    TriState atilde = TriState::Censored;
    TriState b = TriState::Censored;
    TriState btilde = TriState::Censored;
    TriState c = TriState::Censored;
    TriState c_record = TriState::Censored;
    std::uint64_t resolve_time = 0;  ///< time fixing the C verdict, when resolved
};
EventVerdict evaluate_events(std::span<const std::int64_t> path, const StoppingLog& log,
                             std::uint32_t m, std::uint32_t k);

/// Integer times scanned by the two location clauses of window (m, k);
/// exposed so tests can verify they partition [T, U].
struct WindowScans {
    bool resolved = false;
    std::uint64_t lo = 0, hi = 0;                  // full window [T, U]
    std::vector<std::uint64_t> a_times, at_times;  // clause scans
};
WindowScans window_scans(const StoppingLog& log, std::uint32_t m, std::uint32_t k);

struct HitResult {
    std::optional<std::uint64_t> steps;  ///< H_A(n); empty if censored
    double bias_bound = 0.0;  ///< bound on P(hit after the cap) when censored
};

/// H_A(n) over a stored path, scanning at most `cap` steps past n.
HitResult hitting_time(std::span<const std::int64_t> path, std::span<const std::int64_t> sites,
                       std::uint64_t from, std::uint64_t cap, const WalkParams& params);

/// H_A from a live stream's current state. If escape_distance > 0 the scan
/// also stops once the walk sits that far above max(A), with the
/// gambler's-ruin mass h^d as the censoring bias bound.
template <class Stream>
HitResult hitting_time(Stream& stream, const WalkParams& params,
                       std::span<const std::int64_t> sites, std::uint64_t cap,
                       std::uint64_t escape_distance = 0) {
    if (sites.empty()) throw std::invalid_argument("hitting_time: empty target set");
    std::int64_t top = sites[0];
    for (std::int64_t z : sites) top = std::max(top, z);
    const double h = params.q() / params.p;
    auto in_sites = [&](std::int64_t pos) {
        for (std::int64_t z : sites)
            if (z == pos) return true;
        return false;
    };
    if (in_sites(stream.position())) return {0, 0.0};
    for (std::uint64_t taken = 1; taken <= cap; ++taken) {
        stream.advance(params);
        if (in_sites(stream.position())) return {taken, 0.0};
        if (escape_distance > 0 && stream.position() >= top + static_cast<std::int64_t>(escape_distance)) break;
    }
    const std::int64_t d = stream.position() - top;
    return {std::nullopt, d > 0 ? std::pow(h, static_cast<double>(d)) : 1.0};
}

}  // namespace walklab
