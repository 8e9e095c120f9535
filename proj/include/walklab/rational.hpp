// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace walklab {

using u128 = unsigned __int128;

/// Non-negative exact fraction on 128-bit words. Covers probabilities with
/// denominators up to p_den^24, which is what the exact oracles need.
struct Frac {
    u128 num = 0;
    u128 den = 1;
};

inline u128 u128_gcd(u128 a, u128 b) {
    while (b != 0) {
        const u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline Frac reduced(Frac f) {
    if (f.num == 0) return {0, 1};
    const u128 g = u128_gcd(f.num, f.den);
    return {f.num / g, f.den / g};
}

inline bool frac_eq(Frac a, Frac b) {
    a = reduced(a);
    b = reduced(b);
    return a.num == b.num && a.den == b.den;
}

inline double frac_to_double(Frac f) {
    return static_cast<double>(f.num) / static_cast<double>(f.den);
}

/// base^exp, throwing if the product leaves 128 bits.
inline u128 u128_pow_checked(std::uint64_t base, unsigned exp) {
    u128 out = 1;
    const u128 b = base;
    for (unsigned i = 0; i < exp; ++i) {
        if (b != 0 && out > static_cast<u128>(-1) / b) {
            throw std::overflow_error("exact arithmetic overflow; reduce n or use binary floats");
        }
        out *= b;
    }
    return out;
}

inline std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v != 0) {
        out.insert(out.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return out;
}

}  // namespace walklab
