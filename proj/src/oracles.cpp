// SPDX-License-Identifier: Apache-2.0
#include "walklab/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <span>
#include <stdexcept>

#include "walklab/thick_points.hpp"

namespace walklab {

std::string to_string(Method m) {
    switch (m) {
        case Method::closed_form: return "closed-form";
        case Method::dynamic_program: return "dynamic-program";
        case Method::enumeration: return "enumeration";
    }
    return "?";
}

std::string to_string(Arithmetic a) {
    return a == Arithmetic::binary_float ? "binary-float" : "exact-rational";
}

namespace {

void require_exact(const WalkParams& params) {
    if (!params.has_exact) {
        throw std::invalid_argument("exact-rational mode needs p given as a decimal string");
    }
}

ExactProbability make_value(double v, Method m, Arithmetic a) {
    ExactProbability out;
    out.value = out.lower = out.upper = v;
    out.method = m;
    out.arithmetic = a;
    return out;
}

ExactProbability make_exact(Frac f, Method m) {
    ExactProbability out = make_value(frac_to_double(reduced(f)), m, Arithmetic::exact_rational);
    out.exact = reduced(f);
    return out;
}

// binom(n, k) p^k q^(n-k) with running products; log-space beyond n = 300.
double binom_term(std::uint64_t n, std::uint64_t k, double p, double q) {
    if (n <= 300) {
        double acc = 1.0;
        for (std::uint64_t i = 1; i <= k; ++i) {
            acc *= static_cast<double>(n - k + i) / static_cast<double>(i) * p;
        }
        for (std::uint64_t j = 0; j < n - k; ++j) acc *= q;
        return acc;
    }
    const double lg = std::lgamma(static_cast<double>(n) + 1.0) -
                      std::lgamma(static_cast<double>(k) + 1.0) -
                      std::lgamma(static_cast<double>(n - k) + 1.0);
    return std::exp(lg + static_cast<double>(k) * std::log(p) +
                    static_cast<double>(n - k) * std::log(q));
}

u128 binom_u128(std::uint64_t n, std::uint64_t k) {
    u128 c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;  // each prefix is itself a binomial, so exact
    }
    return c;
}

}  // namespace

ExactProbability pmf_position(const WalkParams& params, std::uint64_t n, std::int64_t z,
                              Arithmetic arithmetic) {
    validate(params);
    const bool reachable =
        (static_cast<std::int64_t>(n) + z) % 2 == 0 && z <= static_cast<std::int64_t>(n) &&
        -z <= static_cast<std::int64_t>(n);
    if (arithmetic == Arithmetic::binary_float) {
        if (!reachable) return make_value(0.0, Method::closed_form, arithmetic);
        const std::uint64_t ups = static_cast<std::uint64_t>((static_cast<std::int64_t>(n) + z) / 2);
        return make_value(binom_term(n, ups, params.p, params.q()), Method::closed_form,
                          arithmetic);
    }
    require_exact(params);
    if (!reachable) return make_exact(Frac{0, 1}, Method::closed_form);
    const std::uint64_t ups = static_cast<std::uint64_t>((static_cast<std::int64_t>(n) + z) / 2);
    const u128 num = binom_u128(n, ups) *
                     u128_pow_checked(params.p_num, static_cast<unsigned>(ups)) *
                     u128_pow_checked(params.q_num(), static_cast<unsigned>(n - ups));
    return make_exact(Frac{num, u128_pow_checked(params.p_den, static_cast<unsigned>(n))},
                      Method::closed_form);
}

std::vector<ExactProbability> position_distribution(const WalkParams& params, std::uint64_t n,
                                                    Arithmetic arithmetic) {
    std::vector<ExactProbability> out;
    out.reserve(n + 1);
    for (std::int64_t z = -static_cast<std::int64_t>(n); z <= static_cast<std::int64_t>(n);
         z += 2) {
        out.push_back(pmf_position(params, n, z, arithmetic));
    }
    return out;
}

ExactProbability pmf_total_local_time(const WalkParams& params, std::int64_t z, std::uint32_t k) {
    validate(params);
    if (k < 1) throw std::invalid_argument("pmf_total_local_time: k >= 1 (use atom_never_visit)");
    const double q2 = 2.0 * params.q();
    const double h = params.q() / params.p;
    double v = std::pow(q2, static_cast<double>(k - 1)) * (1.0 - q2);
    if (z < 0) {
        v *= std::pow(h, static_cast<double>(-z));
    } else if (z == 0) {
        v *= q2;
    }
    return make_value(v, Method::closed_form, Arithmetic::binary_float);
}

ExactProbability atom_never_visit(const WalkParams& params, std::int64_t z) {
    validate(params);
    const double h = params.q() / params.p;
    double v = 0.0;
    if (z < 0) {
        v = 1.0 - std::pow(h, static_cast<double>(-z));
    } else if (z == 0) {
        v = 1.0 - 2.0 * params.q();
    }
    return make_value(v, Method::closed_form, Arithmetic::binary_float);
}

ExactProbability no_return_probability(const WalkParams& params, std::uint64_t n,
                                       Arithmetic arithmetic) {
    validate(params);
    if (n < 1) throw std::invalid_argument("no_return_probability: n >= 1");
    const std::size_t width = 2 * n + 1;  // offsets -n..n
    const std::size_t origin = n;
    if (arithmetic == Arithmetic::binary_float) {
        std::vector<double> f(width, 0.0), g(width, 0.0);
        f[origin] = 1.0;
        for (std::uint64_t t = 1; t + 1 <= n; ++t) {
            std::fill(g.begin(), g.end(), 0.0);
            for (std::size_t x = 0; x < width; ++x) {
                if (f[x] == 0.0) continue;
                if (x + 1 < width && x + 1 != origin) g[x + 1] += f[x] * params.p;
                if (x >= 1 && x - 1 != origin) g[x - 1] += f[x] * params.q();
            }
            f.swap(g);
        }
        double total = 0.0;
        for (double v : f) total += v;
        return make_value(total, Method::dynamic_program, arithmetic);
    }
    require_exact(params);
    std::vector<u128> f(width, 0), g(width, 0);
    f[origin] = 1;
    for (std::uint64_t t = 1; t + 1 <= n; ++t) {
        std::fill(g.begin(), g.end(), u128{0});
        for (std::size_t x = 0; x < width; ++x) {
            if (f[x] == 0) continue;
            if (x + 1 < width && x + 1 != origin) g[x + 1] += f[x] * params.p_num;
            if (x >= 1 && x - 1 != origin) g[x - 1] += f[x] * params.q_num();
        }
        f.swap(g);
    }
    u128 total = 0;
    for (u128 v : f) total += v;
    Frac frac{total, u128_pow_checked(params.p_den, static_cast<unsigned>(n - 1))};
    ExactProbability out = make_exact(frac, Method::dynamic_program);
    return out;
}

double bound_return_tail(const WalkParams& params, std::uint64_t m) {
    validate(params);
    if (m < 1) throw std::invalid_argument("bound_return_tail: m >= 1");
    const double fourpq = 4.0 * params.p * params.q();
    if (!(fourpq < 1.0)) throw std::domain_error("bound_return_tail: 4pq must be below 1");
    return std::pow(fourpq, static_cast<double>(m) / 4.0) / (1.0 - std::sqrt(fourpq));
}

double bound_joint_tail_rate(const WalkParams& params, double tail_factor, std::uint64_t n) {
    validate(params);
    if (!(tail_factor > 0.0)) throw std::invalid_argument("bound_joint_tail_rate: A > 0");
    if (n < 2) throw std::invalid_argument("bound_joint_tail_rate: n >= 2");
    const DerivedConstants c = derive_constants(params);
    return std::pow(static_cast<double>(n), -tail_factor * (1.0 + c.delta));
}

std::vector<GammaRateRow> gamma_rate_check(const WalkParams& params, std::uint64_t n_lo,
                                           std::uint64_t n_hi) {
    validate(params);
    if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("gamma_rate_check: bad range");
    const double gamma = 1.0 - 2.0 * params.q();
    const double fourpq = 4.0 * params.p * params.q();
    // One forward DP pass; gamma(t + 1) is the survived mass after t steps.
    const std::size_t width = 2 * n_hi + 1;
    const std::size_t origin = n_hi;
    std::vector<double> f(width, 0.0), g(width, 0.0);
    f[origin] = 1.0;
    std::vector<double> gamma_n(n_hi + 1, 1.0);  // gamma_n[n] = gamma(n)
    for (std::uint64_t t = 1; t + 1 <= n_hi; ++t) {
        std::fill(g.begin(), g.end(), 0.0);
        for (std::size_t x = 0; x < width; ++x) {
            if (f[x] == 0.0) continue;
            if (x + 1 < width && x + 1 != origin) g[x + 1] += f[x] * params.p;
            if (x >= 1 && x - 1 != origin) g[x - 1] += f[x] * params.q();
        }
        f.swap(g);
        double total = 0.0;
        for (double v : f) total += v;
        gamma_n[t + 1] = total;
    }
    std::vector<GammaRateRow> rows;
    for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
        GammaRateRow row;
        row.n = n;
        row.gamma_n = gamma_n[n];
        row.ratio = (gamma_n[n] - gamma) * std::pow(static_cast<double>(n), 1.5) /
                    std::pow(fourpq, static_cast<double>(n) / 2.0);
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Brute-force enumeration

std::optional<EventSpec::Kind> EventSpec::kind_from_name(const std::string& name) {
    if (name == "position-equals") return Kind::position_equals;
    if (name == "no-return-through") return Kind::no_return_through;
    if (name == "max-local-time-at-least") return Kind::max_local_time_at_least;
    if (name == "favorite-count-equals") return Kind::favorite_count_equals;
    if (name == "C-event-resolved-true") return Kind::c_event_resolved_true;
    if (name == "F-count-equals") return Kind::f_count_equals;
    return std::nullopt;
}

std::string EventSpec::name(Kind kind) {
    switch (kind) {
        case Kind::position_equals: return "position-equals";
        case Kind::no_return_through: return "no-return-through";
        case Kind::max_local_time_at_least: return "max-local-time-at-least";
        case Kind::favorite_count_equals: return "favorite-count-equals";
        case Kind::c_event_resolved_true: return "C-event-resolved-true";
        case Kind::f_count_equals: return "F-count-equals";
    }
    return "?";
}

namespace {

enum class PathOutcome : std::uint8_t { no = 0, yes = 1, unresolved = 2 };

// Small per-path evaluator over positions pos[0..h].
struct PathEvaluator {
    const EventSpec& spec;
    std::uint32_t horizon;
    double lambda = 0.0;
    std::vector<std::uint32_t> counts;  // offset by horizon around the start
    std::int64_t start = 0;

    PathOutcome eval(const std::int64_t* pos) {
        switch (spec.kind) {
            case EventSpec::Kind::position_equals:
                return pos[spec.n] == spec.z ? PathOutcome::yes : PathOutcome::no;
            case EventSpec::Kind::no_return_through: {
                for (std::uint64_t t = 1; t + 1 <= spec.n; ++t) {
                    if (pos[t] == pos[0]) return PathOutcome::no;
                }
                return PathOutcome::yes;
            }
            case EventSpec::Kind::max_local_time_at_least: {
                std::uint32_t best = 0;
                replay(pos, spec.n, [&](std::uint32_t c) { best = std::max(best, c); });
                return best >= spec.m ? PathOutcome::yes : PathOutcome::no;
            }
            case EventSpec::Kind::favorite_count_equals: {
                std::uint32_t best = 0, ties = 0;
                replay(pos, spec.n, [&](std::uint32_t c) {
                    if (c > best) {
                        best = c;
                        ties = 1;
                    } else if (c == best) {
                        ++ties;
                    }
                });
                return ties == spec.k ? PathOutcome::yes : PathOutcome::no;
            }
            case EventSpec::Kind::c_event_resolved_true: {
                std::uint32_t sites_at_m = 0;
                PathOutcome out = PathOutcome::unresolved;
                replay_until(pos, horizon, [&](std::uint32_t c) {
                    if (c == spec.m + 1) {
                        out = PathOutcome::no;  // T_{m+1}^1 came first
                        return false;
                    }
                    if (c == spec.m && ++sites_at_m == spec.k) {
                        out = PathOutcome::yes;  // T_m^k reached while open
                        return false;
                    }
                    return true;
                });
                return out;
            }
            case EventSpec::Kind::f_count_equals: {
                ThickPointParams tp;
                tp.epsilon = spec.epsilon;
                tp.lambda = lambda;
                std::span<const std::int64_t> path(pos, horizon + 1);
                return count_thick_pairs_naive(path, tp) == spec.f ? PathOutcome::yes
                                                                   : PathOutcome::no;
            }
        }
        return PathOutcome::no;
    }

  private:
    template <class F>
    void replay(const std::int64_t* pos, std::uint64_t upto, F&& on_count) {
        std::fill(counts.begin(), counts.end(), 0u);
        for (std::uint64_t t = 1; t <= upto; ++t) {
            const std::size_t idx = static_cast<std::size_t>(pos[t] - start + horizon);
            on_count(++counts[idx]);
        }
    }

    template <class F>
    void replay_until(const std::int64_t* pos, std::uint64_t upto, F&& on_count) {
        std::fill(counts.begin(), counts.end(), 0u);
        for (std::uint64_t t = 1; t <= upto; ++t) {
            const std::size_t idx = static_cast<std::size_t>(pos[t] - start + horizon);
            if (!on_count(++counts[idx])) return;
        }
    }
};

}  // namespace

ExactProbability enumerate_exact(const WalkParams& params, std::uint32_t horizon,
                                 const EventSpec& event, Arithmetic arithmetic,
                                 std::uint32_t cap) {
    validate(params);
    if (horizon < 1 || horizon > cap || horizon >= 63) {
        throw std::invalid_argument("enumerate_exact: horizon outside the enumeration cap");
    }
    switch (event.kind) {
        case EventSpec::Kind::position_equals:
        case EventSpec::Kind::no_return_through:
        case EventSpec::Kind::max_local_time_at_least:
        case EventSpec::Kind::favorite_count_equals:
            if (event.n > horizon || event.n < 1) {
                throw std::invalid_argument("enumerate_exact: event time outside the horizon");
            }
            break;
        case EventSpec::Kind::c_event_resolved_true:
            if (event.m < 1 || event.k < 1) {
                throw std::invalid_argument("enumerate_exact: m and k must be >= 1");
            }
            break;
        case EventSpec::Kind::f_count_equals:
            if (horizon < 2) throw std::invalid_argument("enumerate_exact: F needs n >= 2");
            break;
    }
    if (arithmetic == Arithmetic::exact_rational) require_exact(params);

    const std::uint32_t h = horizon;
    std::vector<int> sign(h + 1, -1);  // sign[t] of step t, 1-based
    std::vector<std::int64_t> pos(h + 1);
    for (std::uint32_t t = 0; t <= h; ++t) {
        pos[t] = params.start - static_cast<std::int64_t>(t);
    }
    std::uint32_t ups = 0;

    // Per-ups path weights.
    std::vector<long double> wtab(h + 1);
    for (std::uint32_t u = 0; u <= h; ++u) {
        wtab[u] = std::pow(static_cast<long double>(params.p), static_cast<long double>(u)) *
                  std::pow(static_cast<long double>(params.q()), static_cast<long double>(h - u));
    }
    std::vector<u128> ntab;
    if (arithmetic == Arithmetic::exact_rational) {
        ntab.resize(h + 1);
        for (std::uint32_t u = 0; u <= h; ++u) {
            ntab[u] = u128_pow_checked(params.p_num, u) * u128_pow_checked(params.q_num(), h - u);
        }
    }

    PathEvaluator evaluator{event, h, derive_constants(params).lambda, {}, params.start};
    evaluator.counts.assign(2 * static_cast<std::size_t>(h) + 1, 0u);

    long double acc_yes = 0.0L, acc_open = 0.0L;
    u128 racc_yes = 0, racc_open = 0;

    const std::uint64_t total = std::uint64_t{1} << h;
    for (std::uint64_t idx = 0;; ++idx) {
        const PathOutcome outcome = evaluator.eval(pos.data());
        if (outcome == PathOutcome::yes) {
            acc_yes += wtab[ups];
            if (arithmetic == Arithmetic::exact_rational) racc_yes += ntab[ups];
        } else if (outcome == PathOutcome::unresolved) {
            acc_open += wtab[ups];
            if (arithmetic == Arithmetic::exact_rational) racc_open += ntab[ups];
        }
        if (idx + 1 == total) break;
        // Gray-code flip: the most-flipped bit moves the shortest suffix.
        const int bit = std::countr_zero(idx + 1);
        const std::uint32_t t = h - static_cast<std::uint32_t>(bit);
        sign[t] = -sign[t];
        ups = sign[t] > 0 ? ups + 1 : ups - 1;
        const std::int64_t shift = 2 * sign[t];
        for (std::uint32_t j = t; j <= h; ++j) pos[j] += shift;
    }

    ExactProbability out;
    out.method = Method::enumeration;
    out.arithmetic = arithmetic;
    out.value = static_cast<double>(acc_yes);
    out.lower = out.value;
    out.upper = static_cast<double>(acc_yes + acc_open);
    if (arithmetic == Arithmetic::exact_rational) {
        const u128 den = u128_pow_checked(params.p_den, h);
        out.exact = reduced(Frac{racc_yes, den});
        out.value = out.lower = frac_to_double(*out.exact);
        out.upper = frac_to_double(reduced(Frac{racc_yes + racc_open, den}));
    }
    return out;
}

}  // namespace walklab
