// SPDX-License-Identifier: Apache-2.0
#include "walklab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "walklab/local_time.hpp"
#include "walklab/oracles.hpp"
#include "walklab/stopping.hpp"
#include "walklab/thick_points.hpp"
#include "walklab/walk.hpp"

namespace walklab {

void ExperimentConfig::validate_common() const {
    validate(params);
    if (replicas < 1) throw std::invalid_argument("experiment: replicas must be >= 1");
    if (horizon < 1) throw std::invalid_argument("experiment: horizon must be >= 1");
    if (m < 1 || k < 1) throw std::invalid_argument("experiment: m and k must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("experiment: epsilon must lie in (0, 1)");
    }
    if (!(tolerance > 0.0 && tolerance < 1.0)) {
        throw std::invalid_argument("experiment: tolerance must lie in (0, 1)");
    }
}

int effective_jobs(int jobs) {
    if (jobs > 0) return std::min(jobs, 64);
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 64u));
}

void for_each_replica(std::uint64_t replicas, int jobs,
                      const std::function<void(std::uint64_t)>& fn) {
    const std::uint64_t workers =
        std::min<std::uint64_t>(static_cast<std::uint64_t>(effective_jobs(jobs)), replicas);
    if (workers <= 1) {
        for (std::uint64_t r = 0; r < replicas; ++r) fn(r);
        return;
    }
    std::atomic<std::uint64_t> cursor{0};
    std::mutex error_mutex;
    std::exception_ptr error;
    const std::uint64_t chunk = std::max<std::uint64_t>(1, replicas / (16 * workers));
    auto body = [&] {
        for (;;) {
            const std::uint64_t begin = cursor.fetch_add(chunk);
            if (begin >= replicas) return;
            const std::uint64_t end = std::min(replicas, begin + chunk);
            try {
                for (std::uint64_t r = begin; r < end; ++r) fn(r);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

namespace {

enum class Outcome : std::uint8_t { failure = 0, success = 1, censored = 2 };

EstimateReport summarize(const std::vector<Outcome>& outcomes, std::uint64_t seed) {
    std::uint64_t successes = 0, censored = 0;
    for (Outcome o : outcomes) {
        successes += o == Outcome::success;
        censored += o == Outcome::censored;
    }
    return summarize_bernoulli(successes, censored, outcomes.size(), seed);
}

}  // namespace

EstimateReport run_c_probability(const ExperimentConfig& cfg) {
    cfg.validate_common();
    std::vector<Outcome> outcomes(cfg.replicas, Outcome::censored);
    for_each_replica(cfg.replicas, cfg.jobs, [&](std::uint64_t r) {
        StepStream stream(cfg.params, cfg.seed, r);
        DenseSiteCounts counts;
        std::uint32_t sites_at_m = 0;
        Outcome out = Outcome::censored;
        for (std::uint64_t n = 1; n <= cfg.horizon; ++n) {
            stream.advance(cfg.params);
            const std::uint32_t c = counts.bump(stream.position());
            if (c == cfg.m + 1) {
                out = Outcome::failure;  // T_{m+1}^1 arrived first
                break;
            }
            if (c == cfg.m && ++sites_at_m == cfg.k) {
                out = Outcome::success;  // T_m^k while the level is still open
                break;
            }
        }
        outcomes[r] = out;
    });
    return summarize(outcomes, cfg.seed);
}

EstimateReport run_c_record_probability(const ExperimentConfig& cfg) {
    cfg.validate_common();
    std::vector<Outcome> outcomes(cfg.replicas, Outcome::censored);
    for_each_replica(cfg.replicas, cfg.jobs, [&](std::uint64_t r) {
        StepStream stream(cfg.params, cfg.seed, r);
        DenseSiteCounts counts;
        std::int64_t base = cfg.params.start;
        std::uint32_t records = 0;
        Outcome out = Outcome::censored;
        for (std::uint64_t n = 1; n <= cfg.horizon; ++n) {
            stream.advance(cfg.params);
            const std::int64_t pos = stream.position();
            if (pos <= base) {
                out = Outcome::failure;  // window must stay above the last record
                break;
            }
            if (counts.bump(pos) == cfg.m) {
                base = pos;
                if (++records == cfg.k) {
                    out = Outcome::success;
                    break;
                }
            }
        }
        outcomes[r] = out;
    });
    return summarize(outcomes, cfg.seed);
}

EstimateReport run_no_return(const ExperimentConfig& cfg) {
    cfg.validate_common();
    const std::uint64_t dstar = stopping_distance(cfg.params, cfg.tolerance);
    const std::int64_t stop_at = cfg.params.start + static_cast<std::int64_t>(dstar);
    const std::uint64_t cap = std::max<std::uint64_t>(cfg.horizon, 1'000'000);
    std::vector<Outcome> outcomes(cfg.replicas, Outcome::censored);
    for_each_replica(cfg.replicas, cfg.jobs, [&](std::uint64_t r) {
        StepStream stream(cfg.params, cfg.seed, r);
        Outcome out = Outcome::censored;
        for (std::uint64_t n = 1; n <= cap; ++n) {
            stream.advance(cfg.params);
            if (stream.position() == cfg.params.start) {
                out = Outcome::failure;
                break;
            }
            if (stream.position() >= stop_at) {
                out = Outcome::success;
                break;
            }
        }
        outcomes[r] = out;
    });
    return summarize(outcomes, cfg.seed);
}

namespace {

// (D_n and E_n)^c at n for one replica. Pass 1 builds the final ledger;
// pass 2 replays the identical stream through the pair scanner. The scan
// is skipped when D already failed.
bool de_complement_failure(const ExperimentConfig& cfg, std::uint64_t n, std::uint64_t stream_id,
                           const ThickPointParams& tp) {
    StepStream first(cfg.params, cfg.seed, stream_id);
    DenseSiteCounts counts;
    std::uint32_t max_count = 0;
    for (std::uint64_t t = 1; t <= n; ++t) {
        first.advance(cfg.params);
        max_count = std::max(max_count, counts.bump(first.position()));
    }
    if (!predicate_d(max_count, n, tp)) return true;
    StepStream second(cfg.params, cfg.seed, stream_id);
    ThickPairScanner scanner(n, tp, [&](std::int64_t site) { return counts.get(site); });
    for (std::uint64_t t = 1; t <= n; ++t) {
        second.advance(cfg.params);
        scanner.push(t, second.position());
    }
    return scanner.pairs() != 0;
}

}  // namespace

EstimateReport run_de_complement(const ExperimentConfig& cfg) {
    cfg.validate_common();
    ThickPointParams tp;
    tp.epsilon = cfg.epsilon;
    tp.lambda = derive_constants(cfg.params).lambda;
    std::vector<Outcome> outcomes(cfg.replicas, Outcome::censored);
    for_each_replica(cfg.replicas, cfg.jobs, [&](std::uint64_t r) {
        outcomes[r] =
            de_complement_failure(cfg, cfg.horizon, r, tp) ? Outcome::success : Outcome::failure;
    });
    return summarize(outcomes, cfg.seed);
}

TotalLocalTimePmfReport run_total_local_time_pmf(const ExperimentConfig& cfg,
                                                 std::uint32_t k_max) {
    cfg.validate_common();
    std::vector<std::uint32_t> sampled(cfg.replicas, 0);
    std::atomic<double> bias{0.0};
    for_each_replica(cfg.replicas, cfg.jobs, [&](std::uint64_t r) {
        const TotalLocalTimeSample s =
            sample_total_local_time(cfg.params, cfg.seed, r, cfg.z, cfg.tolerance);
        sampled[r] = static_cast<std::uint32_t>(s.count);
        if (r == 0) bias.store(s.bias_bound);
    });
    TotalLocalTimePmfReport report;
    report.z = cfg.z;
    report.replicas = cfg.replicas;
    report.bias_bound = bias.load();
    report.bin_counts.assign(k_max + 1, 0);
    for (std::uint32_t c : sampled) {
        if (c <= k_max) {
            ++report.bin_counts[c];
        } else {
            ++report.overflow;
        }
    }
    return report;
}

std::vector<GrowthRow> run_local_time_growth(const ExperimentConfig& cfg) {
    cfg.validate_common();
    if (cfg.n_grid.empty()) throw std::invalid_argument("local-time-growth: empty n-grid");
    for (std::size_t i = 1; i < cfg.n_grid.size(); ++i) {
        if (cfg.n_grid[i] <= cfg.n_grid[i - 1]) {
            throw std::invalid_argument("local-time-growth: n-grid must be increasing");
        }
    }
    if (cfg.n_grid.front() < 2) throw std::invalid_argument("local-time-growth: grid starts at 2");
    const std::size_t points = cfg.n_grid.size();
    std::vector<double> ratios(cfg.replicas * points, 0.0);
    for_each_replica(cfg.replicas, cfg.jobs, [&](std::uint64_t r) {
        StepStream stream(cfg.params, cfg.seed, r);
        LocalTimeLedger<DenseSiteCounts> ledger;
        std::size_t gi = 0;
        for (std::uint64_t n = 1; n <= cfg.n_grid.back(); ++n) {
            stream.advance(cfg.params);
            ledger.record_visit(stream.position(), n);
            if (n == cfg.n_grid[gi]) {
                ratios[r * points + gi] = ledger.max_ratio();
                ++gi;
            }
        }
    });
    auto quantile = [](std::vector<double>& v, double q) {
        std::sort(v.begin(), v.end());
        const double idx = q * static_cast<double>(v.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(idx);
        const std::size_t hi = std::min(lo + 1, v.size() - 1);
        const double w = idx - static_cast<double>(lo);
        return v[lo] * (1.0 - w) + v[hi] * w;
    };
    std::vector<GrowthRow> rows;
    for (std::size_t gi = 0; gi < points; ++gi) {
        std::vector<double> column(cfg.replicas);
        for (std::uint64_t r = 0; r < cfg.replicas; ++r) column[r] = ratios[r * points + gi];
        GrowthRow row;
        row.n = cfg.n_grid[gi];
        row.median = quantile(column, 0.5);
        row.q1 = quantile(column, 0.25);
        row.q3 = quantile(column, 0.75);
        rows.push_back(row);
    }
    return rows;
}

FavoriteGrowthReport run_favorite_count_growth(const ExperimentConfig& cfg,
                                               std::uint64_t ratio_floor) {
    cfg.validate_common();
    if (ratio_floor < 16) throw std::invalid_argument("favorite-count-growth: ratio floor >= 16");
    struct Replica {
        std::uint64_t g_total[6] = {0};
        std::uint64_t max_fav = 0;
        double max_ratio = 0.0;
    };
    std::vector<Replica> per(cfg.replicas);
    for_each_replica(cfg.replicas, cfg.jobs, [&](std::uint64_t r) {
        StepStream stream(cfg.params, cfg.seed, r);
        LocalTimeLedger<DenseSiteCounts> ledger;
        Replica& mine = per[r];
        std::size_t prev_k = 0;
        for (std::uint64_t n = 1; n <= cfg.horizon; ++n) {
            stream.advance(cfg.params);
            ledger.record_visit(stream.position(), n);
            const std::size_t k = ledger.favorite_count();
            if (k > mine.max_fav) mine.max_fav = k;
            // The ratio decays while #K is flat, so only growth steps and
            // the first eligible n can set a new running max.
            if (n >= ratio_floor && (k > prev_k || n == ratio_floor)) {
                const double ratio = static_cast<double>(k) /
                                     std::log(std::log(static_cast<double>(n)));
                if (ratio > mine.max_ratio) mine.max_ratio = ratio;
            }
            prev_k = k;
        }
        for (std::size_t j = 1; j <= 5; ++j) mine.g_total[j] = ledger.g(j);
    });
    FavoriteGrowthReport report;
    report.horizon = cfg.horizon;
    report.replicas = cfg.replicas;
    report.ratio_floor = ratio_floor;
    for (const Replica& rep : per) {
        for (std::size_t j = 1; j <= 5; ++j) {
            report.g_total[j] += rep.g_total[j];
            report.g_positive[j] += rep.g_total[j] > 0;
        }
        report.max_favorites = std::max(report.max_favorites, rep.max_fav);
        report.max_ratio = std::max(report.max_ratio, rep.max_ratio);
    }
    return report;
}

std::vector<GapRow> run_gap_growth(const ExperimentConfig& cfg) {
    cfg.validate_common();
    const DerivedConstants consts = derive_constants(cfg.params);
    const double m_budget =
        std::floor(consts.lambda * std::log(static_cast<double>(cfg.horizon))) - 2.0;
    if (static_cast<double>(cfg.m_max) > m_budget) {
        throw std::invalid_argument("gap-growth: m_max exceeds the horizon sizing rule");
    }
    const std::uint32_t m_max = cfg.m_max;
    std::vector<std::int32_t> gaps(cfg.replicas * m_max, -1);  // -1 = censored
    for_each_replica(cfg.replicas, cfg.jobs, [&](std::uint64_t r) {
        StepStream stream(cfg.params, cfg.seed, r);
        PathAnalyzer<DenseSiteCounts> analyzer(
            AnalyzerOptions{StoppingLog::Mode::compact, false, true});
        for (std::uint64_t n = 1; n <= cfg.horizon; ++n) {
            stream.advance(cfg.params);
            analyzer.step(stream.position(), n);
            if (analyzer.log().gap(m_max).has_value()) break;
        }
        for (std::uint32_t m = 1; m <= m_max; ++m) {
            if (auto g = analyzer.log().gap(m)) gaps[r * m_max + (m - 1)] = static_cast<std::int32_t>(*g);
        }
    });
    std::vector<GapRow> rows;
    for (std::uint32_t m = 1; m <= m_max; ++m) {
        GapRow row;
        row.m = m;
        std::uint64_t sum = 0;
        for (std::uint64_t r = 0; r < cfg.replicas; ++r) {
            const std::int32_t g = gaps[r * m_max + (m - 1)];
            if (g < 0) continue;
            ++row.resolved;
            sum += static_cast<std::uint64_t>(g);
            row.max_gap = std::max(row.max_gap, static_cast<std::uint32_t>(g));
        }
        row.mean_gap = row.resolved ? static_cast<double>(sum) / static_cast<double>(row.resolved)
                                    : 0.0;
        row.censored_fraction =
            static_cast<double>(cfg.replicas - row.resolved) / static_cast<double>(cfg.replicas);
        row.valid = row.censored_fraction <= 0.20;
        rows.push_back(row);
    }
    return rows;
}

std::vector<DecayRow> run_thick_pair_decay(const ExperimentConfig& cfg) {
    cfg.validate_common();
    if (cfg.n_grid.empty()) throw std::invalid_argument("thick-pair-decay: empty n-grid");
    ThickPointParams tp;
    tp.epsilon = cfg.epsilon;
    tp.lambda = derive_constants(cfg.params).lambda;
    std::vector<DecayRow> rows;
    for (std::size_t gi = 0; gi < cfg.n_grid.size(); ++gi) {
        const std::uint64_t n = cfg.n_grid[gi];
        if (n < 2) throw std::invalid_argument("thick-pair-decay: grid points must be >= 2");
        std::vector<std::uint8_t> failed(cfg.replicas, 0);
        for_each_replica(cfg.replicas, cfg.jobs, [&](std::uint64_t r) {
            const std::uint64_t stream_id = gi * cfg.replicas + r;
            failed[r] = de_complement_failure(cfg, n, stream_id, tp) ? 1 : 0;
        });
        DecayRow row;
        row.n = n;
        row.replicas = cfg.replicas;
        for (std::uint8_t f : failed) row.failures += f;
        row.frequency = static_cast<double>(row.failures) / static_cast<double>(cfg.replicas);
        row.stderr_value = bernoulli_stderr(row.frequency, cfg.replicas);
        rows.push_back(row);
    }
    return rows;
}

JointTailReport run_joint_tail(const ExperimentConfig& cfg) {
    cfg.validate_common();
    if (cfg.n_grid.empty()) throw std::invalid_argument("joint-tail: empty n-grid");
    if (cfg.z == 0) throw std::invalid_argument("joint-tail: z must be a site other than 0");
    if (!(cfg.tail_factor > 0.0)) throw std::invalid_argument("joint-tail: A must be positive");
    const DerivedConstants consts = derive_constants(cfg.params);
    const std::int64_t sites[2] = {0, cfg.z};
    std::vector<std::uint32_t> totals(cfg.replicas, 0);
    for_each_replica(cfg.replicas, cfg.jobs, [&](std::uint64_t r) {
        const VisitCountsSample s =
            sample_visit_counts(cfg.params, cfg.seed, r, sites, cfg.tolerance);
        totals[r] = static_cast<std::uint32_t>(s.counts[0] + s.counts[1]);
    });
    JointTailReport report;
    for (std::uint64_t n : cfg.n_grid) {
        JointTailRow row;
        row.n = n;
        const double bound =
            2.0 * consts.lambda * cfg.tail_factor * std::log(static_cast<double>(n));
        row.threshold = static_cast<std::uint64_t>(std::floor(bound)) + 1;
        for (std::uint32_t total : totals) row.hits += total >= row.threshold;
        row.estimate = static_cast<double>(row.hits) / static_cast<double>(cfg.replicas);
        row.stderr_value = bernoulli_stderr(row.estimate, cfg.replicas);
        report.rows.push_back(row);
    }
    // Least-squares slope of ln frequency against ln n.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t usable = 0;
    for (const JointTailRow& row : report.rows) {
        if (row.estimate <= 0.0) continue;
        const double x = std::log(static_cast<double>(row.n));
        const double y = std::log(row.estimate);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++usable;
    }
    if (usable >= 2 && usable == report.rows.size()) {
        const double den = static_cast<double>(usable) * sxx - sx * sx;
        report.slope = (static_cast<double>(usable) * sxy - sx * sy) / den;
        report.slope_defined = true;
    }
    return report;
}

IdentityReport run_event_identity(const ExperimentConfig& cfg) {
    cfg.validate_common();
    struct Counts {
        std::uint64_t resolved_true = 0, resolved_false = 0, gaps = 0;
    };
    std::vector<Counts> per(cfg.replicas);
    for_each_replica(cfg.replicas, cfg.jobs, [&](std::uint64_t r) {
        StepStream stream(cfg.params, cfg.seed, r);
        PathAnalyzer<DenseSiteCounts> analyzer(
            AnalyzerOptions{StoppingLog::Mode::compact, false, true});
        for (std::uint64_t n = 1; n <= cfg.horizon; ++n) {
            stream.advance(cfg.params);
            analyzer.step(stream.position(), n);
        }
        Counts& mine = per[r];
        const StoppingLog& log = analyzer.log();
        for (std::uint32_t m = 1; m <= log.max_level(); ++m) {
            if (auto g = log.gap(m)) {
                mine.resolved_true += *g;
                mine.resolved_false += 1;  // C_m^{G_m + 1}
                mine.gaps += 1;
            } else {
                mine.resolved_true += log.frontier(m);
            }
        }
    });
    IdentityReport report;
    report.paths = cfg.replicas;
    for (const Counts& c : per) {
        report.resolved_true += c.resolved_true;
        report.resolved_false += c.resolved_false;
        report.gaps_checked += c.gaps;
    }
    report.mismatches = 0;  // a mismatch would have thrown
    return report;
}

EnumerateCheckReport run_enumerate_check(const WalkParams& params, std::uint32_t n_max) {
    validate(params);
    if (n_max < 1 || n_max > kEnumerationCap) {
        throw std::invalid_argument("enumerate-check: n_max outside the enumeration cap");
    }
    EnumerateCheckReport report;
    const bool exact = params.has_exact;
    for (std::uint32_t n = 1; n <= n_max; ++n) {
        for (std::int64_t z = -static_cast<std::int64_t>(n); z <= static_cast<std::int64_t>(n);
             ++z) {
            EventSpec spec;
            spec.kind = EventSpec::Kind::position_equals;
            spec.n = n;
            spec.z = z;
            const ExactProbability closed = pmf_position(params, n, z);
            const ExactProbability enumerated = enumerate_exact(params, n, spec);
            report.max_abs_diff =
                std::max(report.max_abs_diff, std::abs(closed.value - enumerated.value));
            ++report.comparisons;
            if (exact) {
                const ExactProbability closed_x =
                    pmf_position(params, n, z, Arithmetic::exact_rational);
                const ExactProbability enum_x =
                    enumerate_exact(params, n, spec, Arithmetic::exact_rational);
                if (!frac_eq(*closed_x.exact, *enum_x.exact)) report.rational_consistent = false;
                ++report.comparisons;
            }
        }
        EventSpec spec;
        spec.kind = EventSpec::Kind::no_return_through;
        spec.n = n;
        const ExactProbability dp = no_return_probability(params, n);
        const ExactProbability enumerated = enumerate_exact(params, n, spec);
        report.max_abs_diff =
            std::max(report.max_abs_diff, std::abs(dp.value - enumerated.value));
        ++report.comparisons;
        if (exact) {
            const ExactProbability dp_x =
                no_return_probability(params, n, Arithmetic::exact_rational);
            const ExactProbability enum_x =
                enumerate_exact(params, n, spec, Arithmetic::exact_rational);
            if (!frac_eq(*dp_x.exact, *enum_x.exact)) report.rational_consistent = false;
            ++report.comparisons;
        }
    }
    return report;
}

}  // namespace walklab
