// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "walklab/params.hpp"
#include "walklab/report.hpp"

namespace walklab {

/// Shared experiment configuration. Replica r always uses stream id r under
/// the configured seed, and results are merged by replica index, so output
/// values never depend on `jobs` or on execution order.
struct ExperimentConfig {
    WalkParams params;
    std::uint64_t replicas = 1000;
    std::uint64_t seed = 1;
    std::uint64_t horizon = 100000;
    std::uint32_t m = 1;
    std::uint32_t k = 1;
    std::int64_t z = 0;
    double epsilon = 0.3;
    double tail_factor = 1.0;  ///< the A of the joint-tail exceedance
    double tolerance = 1e-6;   ///< stopping bias budget for total-local-time draws
    std::vector<std::uint64_t> n_grid;
    std::uint32_t m_max = 10;
    int jobs = 0;  ///< 0 = hardware concurrency; affects wall time only

    void validate_common() const;
};

int effective_jobs(int jobs);

/// Run fn(replica_id) for replica_id in [0, replicas), possibly on several
/// threads. Exceptions are rethrown on the calling thread.
void for_each_replica(std::uint64_t replicas, int jobs, const std::function<void(std::uint64_t)>& fn);

// --- Bernoulli estimands ----------------------------------------------------

/// P(C_m^k): k distinct sites reach local time m before any site reaches
/// m + 1. Censored when neither happens by the horizon.
EstimateReport run_c_probability(const ExperimentConfig& cfg);

/// P(C~_m^1 ... C~_m^k): the ascending-record chain. Each inter-record
/// window must stay strictly above the previous record position.
EstimateReport run_c_record_probability(const ExperimentConfig& cfg);

/// P(no return to the start, ever), sampled with the distance-d* stopping
/// rule at the configured tolerance.
EstimateReport run_no_return(const ExperimentConfig& cfg);

/// P((D_n and E_n)^c) at n = horizon for the configured epsilon.
EstimateReport run_de_complement(const ExperimentConfig& cfg);

// --- Distribution and growth suites ------------------------------------------

struct TotalLocalTimePmfReport {
    std::int64_t z = 0;
    std::uint64_t replicas = 0;
    std::vector<std::uint64_t> bin_counts;  ///< index k, 0..k_max; overflow pooled past k_max
    std::uint64_t overflow = 0;
    double bias_bound = 0.0;
};
TotalLocalTimePmfReport run_total_local_time_pmf(const ExperimentConfig& cfg,
                                                 std::uint32_t k_max = 10);

struct GrowthRow {
    std::uint64_t n = 0;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
};
/// Median and quartiles of xi(n)/ln n over replicas at each grid point.
std::vector<GrowthRow> run_local_time_growth(const ExperimentConfig& cfg);

struct FavoriteGrowthReport {
    std::uint64_t horizon = 0;
    std::uint64_t replicas = 0;
    std::uint64_t ratio_floor = 0;        ///< smallest n entering the ratio running max
    std::uint64_t g_positive[6] = {0};    ///< replicas with g(k) > 0, k = 1..5
    std::uint64_t g_total[6] = {0};       ///< pooled g(k)
    std::uint64_t max_favorites = 0;      ///< pooled max #K(n)
    double max_ratio = 0.0;               ///< pooled max #K(n)/ln ln n, n >= ratio_floor
};
FavoriteGrowthReport run_favorite_count_growth(const ExperimentConfig& cfg,
                                               std::uint64_t ratio_floor = 1000);

struct GapRow {
    std::uint32_t m = 0;
    std::uint32_t max_gap = 0;      ///< over resolved replicas
    double mean_gap = 0.0;          ///< over resolved replicas
    std::uint64_t resolved = 0;
    double censored_fraction = 0.0;
    bool valid = true;  ///< false when censoring exceeds 20%
};
/// G_m statistics for m = 1..m_max, replicas stopping early once G_{m_max}
/// resolves. Requires m_max <= floor(lambda ln horizon) - 2.
std::vector<GapRow> run_gap_growth(const ExperimentConfig& cfg);

struct DecayRow {
    std::uint64_t n = 0;
    std::uint64_t failures = 0;
    std::uint64_t replicas = 0;
    double frequency = 0.0;
    double stderr_value = 0.0;
};
/// Frequency of (D_n and E_n)^c across the n-grid.
std::vector<DecayRow> run_thick_pair_decay(const ExperimentConfig& cfg);

struct JointTailRow {
    std::uint64_t n = 0;
    std::uint64_t threshold = 0;  ///< smallest integer above 2 lambda A ln n
    std::uint64_t hits = 0;
    double estimate = 0.0;
    double stderr_value = 0.0;
};
struct JointTailReport {
    std::vector<JointTailRow> rows;
    double slope = 0.0;  ///< least-squares slope of ln(estimate) on ln(n)
    bool slope_defined = false;
};
/// Tail of xi(0, inf) + xi(z, inf) against the 2 lambda A ln n thresholds,
/// one shared sample of walks across the grid.
JointTailReport run_joint_tail(const ExperimentConfig& cfg);

struct IdentityReport {
    std::uint64_t paths = 0;
    std::uint64_t resolved_true = 0;   ///< C events resolved true
    std::uint64_t resolved_false = 0;  ///< C events resolved false
    std::uint64_t gaps_checked = 0;
    std::uint64_t mismatches = 0;      ///< always 0 unless the detectors are broken
};
/// Streams every replica through the online analyzer with the route
/// cross-check enabled; a disagreement throws detector_mismatch_error.
IdentityReport run_event_identity(const ExperimentConfig& cfg);

struct EnumerateCheckReport {
    std::uint64_t comparisons = 0;
    double max_abs_diff = 0.0;    ///< enumeration vs closed form / DP, floats
    bool rational_consistent = true;
    bool passed(double tol = 1e-12) const { return rational_consistent && max_abs_diff <= tol; }
};
/// Enumeration against the position pmf and the no-return DP for all
/// horizons up to n_max, in both arithmetics.
EnumerateCheckReport run_enumerate_check(const WalkParams& params, std::uint32_t n_max);

}  // namespace walklab
