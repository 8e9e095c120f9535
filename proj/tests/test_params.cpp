// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "walklab/params.hpp"

using namespace walklab;

namespace {

double ulps_apart(double a, double b) {
    if (a == b) return 0.0;
    const double ulp = std::nextafter(std::max(std::abs(a), std::abs(b)),
                                      std::numeric_limits<double>::infinity()) -
                       std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) / ulp;
}

}  // namespace

TEST_CASE("derived constants at p = 0.75") {
    const DerivedConstants c = derive_constants(make_params("0.75"));
    CHECK(c.gamma == 0.5);
    CHECK(c.h == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    // 2q equals gamma at this p, so lambda and theta coincide.
    CHECK(c.lambda == doctest::Approx(1.4426950408889634).epsilon(1e-15));
    CHECK(c.theta == doctest::Approx(1.4426950408889634).epsilon(1e-15));
    CHECK(c.delta == doctest::Approx(0.10003137304700838).epsilon(1e-12));
}

TEST_CASE("derived constants at p = 0.9") {
    const DerivedConstants c = derive_constants(make_params("0.9"));
    CHECK(c.gamma == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(c.lambda == doctest::Approx(0.62133493455961175).epsilon(1e-14));
    CHECK(c.theta == doctest::Approx(4.481420117724551).epsilon(1e-14));
    CHECK(c.delta == doctest::Approx(0.13864688385321422).epsilon(1e-12));
}

TEST_CASE("delta matches its defining expression evaluated in long double") {
    for (double p : {0.51, 0.6, 0.75, 0.9, 0.99}) {
        const DerivedConstants c = derive_constants(make_params(p));
        const long double q = 1.0L - static_cast<long double>(p);
        const long double sh = std::sqrt(q / static_cast<long double>(p));
        const long double delta =
            2.0L * std::log((2.0L * q + sh) / (1.0L + sh)) / std::log(2.0L * q) - 1.0L;
        CHECK(c.delta == doctest::Approx(static_cast<double>(delta)).epsilon(1e-13));
        CHECK(c.delta > 0.0);
    }
}

TEST_CASE("algebraic identities hold to a few ulps") {
    for (double p : {0.51, 0.6, 0.66, 0.75, 0.8, 0.9, 0.999}) {
        const WalkParams params = make_params(p);
        const DerivedConstants c = derive_constants(params);
        CHECK(ulps_apart(c.gamma + 2.0 * params.q(), 1.0) <= 4.0);
        CHECK(ulps_apart(c.h * params.p, params.q()) <= 4.0);
        CHECK(ulps_apart(std::exp(-1.0 / c.lambda), 2.0 * params.q()) <= 4.0);
        CHECK(ulps_apart(std::exp(-1.0 / c.theta), c.gamma) <= 4.0);
        CHECK(c.gamma > 0.0);
        CHECK(c.gamma < 1.0);
        CHECK(c.h > 0.0);
        CHECK(c.h < 1.0);
        CHECK(c.lambda > 0.0);
        CHECK(c.theta > 0.0);
    }
}

TEST_CASE("probabilities outside (1/2, 1) are rejected") {
    CHECK_THROWS_AS(make_params(0.5), std::invalid_argument);
    CHECK_THROWS_AS(make_params(0.3), std::invalid_argument);
    CHECK_THROWS_AS(make_params(1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_params(1.5), std::invalid_argument);
    CHECK_THROWS_AS(make_params(std::nan("")), std::invalid_argument);
    CHECK_THROWS_AS(make_params("0.5"), std::invalid_argument);
    CHECK_THROWS_AS(make_params("1.0"), std::invalid_argument);
}

TEST_CASE("decimal strings keep the reduced exact form") {
    const WalkParams a = make_params("0.75");
    CHECK(a.has_exact);
    CHECK(a.p_num == 3);
    CHECK(a.p_den == 4);
    CHECK(a.q_num() == 1);

    const WalkParams b = make_params("0.6");
    CHECK(b.p_num == 3);
    CHECK(b.p_den == 5);

    const WalkParams c = make_params("0.9");
    CHECK(c.p_num == 9);
    CHECK(c.p_den == 10);

    CHECK_THROWS_AS(make_params("abc"), std::invalid_argument);
    CHECK_THROWS_AS(make_params("0..6"), std::invalid_argument);
    CHECK_THROWS_AS(make_params(""), std::invalid_argument);

    const WalkParams d = make_params(0.8);
    CHECK_FALSE(d.has_exact);
}
