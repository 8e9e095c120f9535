// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "walklab/params.hpp"
#include "walklab/rational.hpp"

namespace walklab {

enum class Method { closed_form, dynamic_program, enumeration };
enum class Arithmetic { binary_float, exact_rational };

std::string to_string(Method m);
std::string to_string(Arithmetic a);

/// A sampling-free probability value. `lower`/`upper` differ from `value`
/// only when an enumerated event is unresolved on some paths, in which
/// case they bracket the truth by counting those paths both ways.
struct ExactProbability {
    double value = 0.0;
    Method method = Method::closed_form;
    Arithmetic arithmetic = Arithmetic::binary_float;
    double lower = 0.0;
    double upper = 0.0;
    std::optional<Frac> exact;  // rational mode only
};

/// P(S_n = z): binom(n, (n+z)/2) p^((n+z)/2) q^((n-z)/2) when n + z is
/// even and |z| <= n, else 0.
ExactProbability pmf_position(const WalkParams& params, std::uint64_t n, std::int64_t z,
                              Arithmetic arithmetic = Arithmetic::binary_float);

/// The full distribution of S_n in one pass; entry i corresponds to
/// z = -n + 2i (only reachable parities are listed).
std::vector<ExactProbability> position_distribution(const WalkParams& params, std::uint64_t n,
                                                    Arithmetic arithmetic = Arithmetic::binary_float);

/// P(xi(z, infinity) = k) for k >= 1: geometric-type law in k with the
/// h^(-z) hitting factor for z < 0 and one extra 2q factor at z = 0.
ExactProbability pmf_total_local_time(const WalkParams& params, std::int64_t z, std::uint32_t k);

/// P(xi(z, infinity) = 0): 1 - h^(-z) for z < 0, gamma at z = 0, 0 above.
ExactProbability atom_never_visit(const WalkParams& params, std::int64_t z);

/// gamma(n) = P(S_i != 0 for 1 <= i <= n - 1), by a dynamic program over
/// (step, position) states that forbids the origin. gamma(1) = 1.
ExactProbability no_return_probability(const WalkParams& params, std::uint64_t n,
                                       Arithmetic arithmetic = Arithmetic::binary_float);

/// Tail bound (4pq)^(m/4) / (1 - sqrt(4pq)) on returning at or after m/2.
/// May exceed 1 for small m.
double bound_return_tail(const WalkParams& params, std::uint64_t m);

/// Decay rate n^(-A(1+delta)) of the joint total-local-time tail bound
/// (constant intentionally omitted).
double bound_joint_tail_rate(const WalkParams& params, double tail_factor, std::uint64_t n);

/// Normalized ratios (gamma(n) - gamma) n^(3/2) / (4pq)^(n/2); bounded when
/// the convergence rate is right.
struct GammaRateRow {
    std::uint64_t n = 0;
    double gamma_n = 0.0;
    double ratio = 0.0;
};
std::vector<GammaRateRow> gamma_rate_check(const WalkParams& params, std::uint64_t n_lo,
                                           std::uint64_t n_hi);

/// Path events measurable from a prefix S_0..S_horizon, for the
/// brute-force enumerator.
struct EventSpec {
    enum class Kind {
        position_equals,          // S_n = z
        no_return_through,        // S_i != S_0 for 1 <= i <= n-1
        max_local_time_at_least,  // xi(n) >= m
        favorite_count_equals,    // #K(n) = k
        c_event_resolved_true,    // T_m^k observed before T_{m+1}^1
        f_count_equals,           // F_horizon = f at the given epsilon
    };
    Kind kind = Kind::position_equals;
    std::uint64_t n = 0;
    std::int64_t z = 0;
    std::uint32_t m = 1;
    std::uint32_t k = 1;
    std::uint64_t f = 0;
    double epsilon = 0.3;

    static std::optional<EventSpec::Kind> kind_from_name(const std::string& name);
    static std::string name(Kind kind);
};

inline constexpr std::uint32_t kEnumerationCap = 24;

/// Exact probability of `event` over all 2^horizon sign sequences, each
/// weighted p^(#up) q^(#down). Paths are visited in Gray-code order so a
/// single step flips between successive paths.
ExactProbability enumerate_exact(const WalkParams& params, std::uint32_t horizon,
                                 const EventSpec& event,
                                 Arithmetic arithmetic = Arithmetic::binary_float,
                                 std::uint32_t cap = kEnumerationCap);

}  // namespace walklab
