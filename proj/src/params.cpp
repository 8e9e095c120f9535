// SPDX-License-Identifier: Apache-2.0
#include "walklab/params.hpp"

#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace walklab {

void validate(const WalkParams& params) {
    if (!(params.p > 0.5) || !(params.p < 1.0)) {
        throw std::invalid_argument("walk probability p must satisfy 1/2 < p < 1");
    }
    if (params.has_exact) {
        if (params.p_num == 0 || params.p_den == 0 || params.p_num >= params.p_den ||
            2 * params.p_num <= params.p_den) {
            throw std::invalid_argument("exact probability must satisfy 1/2 < p < 1");
        }
    }
}

WalkParams make_params(double p, std::int64_t start) {
    WalkParams params;
    params.p = p;
    params.start = start;
    params.has_exact = false;
    params.p_num = 0;
    params.p_den = 0;
    validate(params);
    return params;
}

WalkParams make_params(const std::string& p_decimal, std::int64_t start) {
    const char* s = p_decimal.c_str();
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    bool saw_digit = false;
    bool saw_dot = false;
    for (; *s != '\0'; ++s) {
        if (*s == '.') {
            if (saw_dot) throw std::invalid_argument("malformed probability: " + p_decimal);
            saw_dot = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(*s))) {
            throw std::invalid_argument("malformed probability: " + p_decimal);
        }
        saw_digit = true;
        if (num > (UINT64_MAX - 9) / 10 || (saw_dot && den > UINT64_MAX / 10)) {
            throw std::invalid_argument("probability has too many digits: " + p_decimal);
        }
        num = num * 10 + static_cast<std::uint64_t>(*s - '0');
        if (saw_dot) den *= 10;
    }
    if (!saw_digit) throw std::invalid_argument("malformed probability: " + p_decimal);
    const std::uint64_t g = std::gcd(num, den);
    num /= g;
    den /= g;

    WalkParams params;
    params.p = std::stod(p_decimal);
    params.start = start;
    params.p_num = num;
    params.p_den = den;
    params.has_exact = true;
    validate(params);
    return params;
}

DerivedConstants derive_constants(const WalkParams& params) {
    validate(params);
    const double q = params.q();
    DerivedConstants c;
    c.gamma = 1.0 - 2.0 * q;
    c.h = q / params.p;
    c.lambda = -1.0 / std::log(2.0 * q);
    c.theta = -1.0 / std::log(c.gamma);
    const double sh = std::sqrt(c.h);
    c.delta = 2.0 * std::log((2.0 * q + sh) / (1.0 + sh)) / std::log(2.0 * q) - 1.0;
    return c;
}

}  // namespace walklab
