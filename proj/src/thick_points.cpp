// SPDX-License-Identifier: Apache-2.0
#include "walklab/thick_points.hpp"

#include <cmath>
#include <stdexcept>

#include "walklab/local_time.hpp"

namespace walklab {

double ThickPointParams::threshold(std::uint64_t n) const {
    return (1.0 - epsilon) * lambda * std::log(static_cast<double>(n));
}

std::uint64_t ThickPointParams::window(std::uint64_t n) const {
    return static_cast<std::uint64_t>(std::floor(2.0 * lambda * std::log(static_cast<double>(n))));
}

namespace {

void require_prefix(std::span<const std::int64_t> path) {
    if (path.size() < 3) {
        throw std::invalid_argument("thick-point counters need a prefix S_0..S_n with n >= 2");
    }
}

}  // namespace

std::uint64_t count_thick_pairs_naive(std::span<const std::int64_t> path,
                                      const ThickPointParams& tp) {
    require_prefix(path);
    const std::uint64_t n = path.size() - 1;
    LocalTimeLedger<MapSiteCounts> ledger;
    for (std::uint64_t t = 1; t <= n; ++t) ledger.record_visit(path[t], t);
    const double tau = tp.threshold(n);
    const std::uint64_t window = tp.window(n);

    std::uint64_t pairs = 0;
    for (std::uint64_t i = 1; i <= n; ++i) {
        const std::uint64_t j_hi = std::min(n, i + window);
        for (std::uint64_t j = i + 1; j <= j_hi; ++j) {
            const std::int64_t a = path[i];
            const std::int64_t b = path[j];
            if (a == b) continue;
            if (static_cast<double>(std::min(ledger.count(a), ledger.count(b))) < tau) continue;
            bool revisited = false;
            for (std::uint64_t t = i + 1; t < j && !revisited; ++t) {
                revisited = path[t] == a || path[t] == b;
            }
            if (!revisited) ++pairs;
        }
    }
    return pairs;
}

std::uint64_t count_thick_pairs(std::span<const std::int64_t> path, const ThickPointParams& tp) {
    require_prefix(path);
    const std::uint64_t n = path.size() - 1;
    LocalTimeLedger<MapSiteCounts> ledger;
    for (std::uint64_t t = 1; t <= n; ++t) ledger.record_visit(path[t], t);
    ThickPairScanner scanner(n, tp, [&](std::int64_t site) { return ledger.count(site); });
    for (std::uint64_t t = 1; t <= n; ++t) scanner.push(t, path[t]);
    return scanner.pairs();
}

bool predicate_d(std::uint32_t max_count, std::uint64_t n, const ThickPointParams& tp) {
    if (n < 2) throw std::invalid_argument("predicate_d needs n >= 2");
    const double base = tp.lambda * std::log(static_cast<double>(n));
    const double lo = (1.0 - tp.epsilon / 2.0) * base;
    const double hi = 2.0 * (1.0 + tp.epsilon / 2.0) * base;
    const double xi = static_cast<double>(max_count);
    return lo <= xi && xi <= hi;
}

bool predicate_e(std::span<const std::int64_t> path, const ThickPointParams& tp) {
    return count_thick_pairs(path, tp) == 0;
}

}  // namespace walklab
