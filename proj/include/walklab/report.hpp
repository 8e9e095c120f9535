// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace walklab {

struct ConfidenceInterval {
    double lo = 0.0;
    double hi = 1.0;
};

/// 95% Wilson score interval; well behaved at estimates of 0 and 1.
inline ConfidenceInterval wilson95(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half =
        z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    ConfidenceInterval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
    if (successes == 0) ci.lo = 0.0;  // the interval ends are exact at the boundary
    if (successes == trials) ci.hi = 1.0;
    return ci;
}

inline double bernoulli_stderr(double phat, std::uint64_t trials) {
    if (trials == 0) return 0.0;
    return std::sqrt(phat * (1.0 - phat) / static_cast<double>(trials));
}

/// Monte Carlo output for one Bernoulli estimand. `estimate` averages the
/// resolved replicas; the pessimistic/optimistic pair counts censored
/// replicas as failures/successes and brackets it.
struct EstimateReport {
    double estimate = 0.0;
    double stderr_value = 0.0;
    ConfidenceInterval ci95;
    std::uint64_t replicas = 0;
    std::uint64_t resolved = 0;
    std::uint64_t censored = 0;
    std::uint64_t successes = 0;
    double estimate_pessimistic = 0.0;
    double estimate_optimistic = 0.0;
    bool valid = true;  ///< false when censoring exceeds the 20% budget
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;  ///< console diagnostics only; never serialized
};

inline EstimateReport summarize_bernoulli(std::uint64_t successes, std::uint64_t censored,
                                          std::uint64_t replicas, std::uint64_t seed) {
    EstimateReport r;
    r.replicas = replicas;
    r.censored = censored;
    r.resolved = replicas - censored;
    r.successes = successes;
    r.seed = seed;
    r.estimate = r.resolved ? static_cast<double>(successes) / static_cast<double>(r.resolved) : 0.0;
    r.stderr_value = bernoulli_stderr(r.estimate, r.resolved);
    r.ci95 = wilson95(successes, r.resolved);
    r.estimate_pessimistic =
        replicas ? static_cast<double>(successes) / static_cast<double>(replicas) : 0.0;
    r.estimate_optimistic =
        replicas ? static_cast<double>(successes + censored) / static_cast<double>(replicas) : 0.0;
    r.valid = replicas > 0 && 5 * censored <= replicas;  // censoring <= 20%
    return r;
}

}  // namespace walklab
