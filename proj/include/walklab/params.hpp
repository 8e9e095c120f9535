// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

namespace walklab {

/// Parameters of the asymmetric nearest-neighbor walk on the integers:
/// each step is +1 with probability p and -1 with probability q = 1 - p.
/// Only the transient-to-the-right regime 1/2 < p < 1 is supported.
struct WalkParams {
    double p = 0.75;
    std::int64_t start = 0;

    // Exact rational form of p (reduced), available when p was given as a
    // decimal string. The exact-arithmetic oracles require it.
    std::uint64_t p_num = 3;
    std::uint64_t p_den = 4;
    bool has_exact = true;

    double q() const { return 1.0 - p; }
    std::uint64_t q_num() const { return p_den - p_num; }
};

/// Build params from a binary-float probability. No exact rational form.
WalkParams make_params(double p, std::int64_t start = 0);

/// Build params from a decimal string such as "0.75". Keeps the exact
/// rational value alongside the binary float.
WalkParams make_params(const std::string& p_decimal, std::int64_t start = 0);

/// Throws std::invalid_argument unless 1/2 < p < 1.
void validate(const WalkParams& params);

/// Constants derived from p. All logarithms are natural.
struct DerivedConstants {
    double gamma;   ///< 1 - 2q: probability of never returning to the start
    double h;       ///< q/p: per-unit-distance downward hitting probability
    double lambda;  ///< -1/log(2q): growth rate of the maximal local time
    double theta;   ///< -1/log(gamma): growth rate of gap and favorite counts
    double delta;   ///< 2 log((2q + sqrt(h))/(1 + sqrt(h)))/log(2q) - 1
};

DerivedConstants derive_constants(const WalkParams& params);

}  // namespace walklab
