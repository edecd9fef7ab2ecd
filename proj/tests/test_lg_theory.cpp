#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lgkac/error.hpp"
#include "lgkac/lg_theory.hpp"
#include "lgkac/rng.hpp"

using namespace lgkac;
using std::numbers::pi;

TEST_CASE("enumeration bound") {
    const LGBound b = enumerate_lg_bound();
    CHECK(b.k_max == 1);
    CHECK(b.k_min == -3);
}

TEST_CASE("k_exponential") {
    CHECK(k_exponential(1.0, std::numbers::ln2) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(k_exponential(2.0, 1e-12) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(k_exponential(2.0, 1e3) == 0.0);
}

TEST_CASE("k_exponential never exceeds one") {
    Engine engine = make_stream(17, 0);
    std::uniform_real_distribution<double> exponent(-4.0, 4.0);
    for (int i = 0; i < 10000; ++i) {
        const double gamma = std::pow(10.0, exponent(engine)), tau = std::pow(10.0, exponent(engine));
        const double k = k_exponential(gamma, tau);
        const double e = std::exp(-gamma * tau);
        CHECK(k <= 1.0);
        CHECK(std::abs(k - (1.0 - (1.0 - e) * (1.0 - e))) <= 1e-12);
    }
}

TEST_CASE("k_damped_oscillatory") {
    CHECK(k_damped_oscillatory({pi / 3.0, 0.0}, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(k_damped_oscillatory({pi, 0.0}, 1.0) == doctest::Approx(-3.0).epsilon(1e-15));
    for (double tau : {0.1, 0.7, 3.0}) CHECK(k_damped_oscillatory({0.0, 1.3}, tau) == k_exponential(1.3, tau));
}

TEST_CASE("k_undamped_identity") {
    CHECK(k_undamped_identity(pi / 3.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(k_undamped_identity(0.0) == 1.0);
    CHECK(k_undamped_identity(pi / 2.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("undamped form agrees with the identity and stays in [-3, 3]") {
    Engine engine = make_stream(18, 0);
    std::uniform_real_distribution<double> omega(0.0, 20.0), tau(1e-6, 10.0), gamma(0.0, 5.0);
    for (int i = 0; i < 10000; ++i) {
        const double w = omega(engine), t = tau(engine);
        CHECK(std::abs(k_damped_oscillatory({w, 0.0}, t) - k_undamped_identity(w * t)) <= 1e-12);
        const double k = k_damped_oscillatory({w, gamma(engine)}, t);
        CHECK(k <= 3.0);
        CHECK(k >= -3.0);
    }
}

TEST_CASE("violation region of the undamped model") {
    const ViolationReport r = violation_region({1.0, 0.0}, {0.01, pi}, 1000);
    CHECK(std::abs(r.tau_star - pi / 3.0) <= 1e-6);
    CHECK(std::abs(r.k_max - 1.5) <= 1e-9);
    REQUIRE(r.violating_intervals.size() == 1);
    CHECK(r.violating_intervals[0].first == 0.01);
    CHECK(std::abs(r.violating_intervals[0].second - pi / 2.0) <= 1e-9);
}

TEST_CASE("undamped violation intervals are where 0 < cos(omega tau) < 1") {
    // Over two periods: (0.05, pi/2), (3pi/2, 2pi), (2pi, 5pi/2), (7pi/2, 4pi - 0.05) scaled by 1/omega.
    const double omega = 2.0;
    const ViolationReport r = violation_region({omega, 0.0}, {0.05 / omega, (4.0 * pi - 0.05) / omega}, 4000);
    REQUIRE(r.violating_intervals.size() == 4);
    const double a = std::acos(0.0) / omega;  // pi/2 / omega
    const double expected[4][2] = {{0.05 / omega, a},
                                   {(2.0 * pi - std::acos(0.0)) / omega, 2.0 * pi / omega},
                                   {2.0 * pi / omega, (2.0 * pi + std::acos(0.0)) / omega},
                                   {(4.0 * pi - std::acos(0.0)) / omega, (4.0 * pi - 0.05) / omega}};
    for (std::size_t i = 0; i < 4; ++i) {
        CAPTURE(i);
        CHECK(std::abs(r.violating_intervals[i].first - expected[i][0]) <= 1e-7);
        CHECK(std::abs(r.violating_intervals[i].second - expected[i][1]) <= 1e-7);
    }
    // Interior crossings are refined to the bisection tolerance.
    CHECK(std::abs(k_damped_oscillatory({omega, 0.0}, r.violating_intervals[0].second) - 1.0) <= 1e-9);
}

TEST_CASE("crossings of a damped model satisfy K = 1") {
    const OscillatoryModel model{3.0, 0.4};
    const ViolationReport r = violation_region(model, {0.01, 5.0}, 2000);
    REQUIRE_FALSE(r.violating_intervals.empty());
    for (const auto& [lo, hi] : r.violating_intervals) {
        CHECK(lo < hi);
        if (lo != 0.01) CHECK(std::abs(k_damped_oscillatory(model, lo) - 1.0) <= 1e-9);
        if (hi != 5.0) CHECK(std::abs(k_damped_oscillatory(model, hi) - 1.0) <= 1e-9);
        CHECK(k_damped_oscillatory(model, 0.5 * (lo + hi)) > 1.0);
    }
    CHECK(r.k_max == k_damped_oscillatory(model, r.tau_star));
}

TEST_CASE("strong damping and zero frequency give no violation") {
    const ViolationReport damped = violation_region({1.0, 10.0}, {0.001, 5.0}, 5000);
    CHECK(damped.violating_intervals.empty());
    CHECK(damped.k_max < 1.0);
    for (double gamma : {0.1, 1.0, 5.0})
        CHECK(violation_region({0.0, gamma}, {0.001, 10.0}, 1000).violating_intervals.empty());
}

TEST_CASE("maximal K is nonincreasing in damping") {
    for (double omega : {0.5, 1.0, 4.0}) {
        double previous = INFINITY;
        for (double gamma = 0.0; gamma <= 3.0; gamma += 0.1) {
            const double k_max = violation_region({omega, gamma}, {1e-3, 2.0 * pi / omega}, 2000).k_max;
            CHECK(k_max <= previous + 1e-12);
            previous = k_max;
        }
    }
}

TEST_CASE("violation_region input errors") {
    CHECK_THROWS_AS(violation_region({1.0, 0.0}, {1.0, 1.0}, 100), Error);
    CHECK_THROWS_AS(violation_region({1.0, 0.0}, {0.0, 1.0}, 100), Error);
    CHECK_THROWS_AS(violation_region({1.0, 0.0}, {0.1, 1.0}, 99), Error);
    CHECK_THROWS_AS(violation_region({-1.0, 0.0}, {0.1, 1.0}, 100), Error);
}
