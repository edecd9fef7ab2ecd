#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "lgkac/error.hpp"
#include "lgkac/stochastic_processes.hpp"
#include "test_helpers.hpp"

using namespace lgkac;
using lgkac::test::sample_stats;
using lgkac::test::simpson;

TEST_CASE("noiseless OU decays geometrically") {
    const OUParams p{1.0, 0.0, -65.0, -64.0};
    const auto traj = simulate_ou(p, {0.0, std::numbers::ln2, 4}, 7);
    const double expected[] = {1.0, 0.5, 0.25, 0.125, 0.0625};
    for (std::size_t k = 0; k < 5; ++k) CHECK(traj.values[k] - p.v_rest == doctest::Approx(expected[k]).epsilon(1e-14));
}

TEST_CASE("noiseless OU at rest stays at rest") {
    const OUParams p{3.0, 0.0, 2.5, 2.5};
    const auto traj = simulate_ou(p, {0.0, 0.1, 50}, 1);
    for (double v : traj.values) CHECK(v == 2.5);
}

TEST_CASE("OU parameter validation") {
    const TimeGrid grid{0.0, 0.1, 10};
    CHECK_THROWS_AS(simulate_ou({0.0, 1.0, 0.0, 0.0}, grid, 1), Error);
    CHECK_THROWS_AS(simulate_ou({1.0, -1.0, 0.0, 0.0}, grid, 1), Error);
    CHECK_THROWS_AS(simulate_ou({std::numeric_limits<double>::quiet_NaN(), 1.0, 0.0, 0.0}, grid, 1), Error);
    CHECK_THROWS_AS(simulate_ou({1.0, 1.0, 0.0, INFINITY}, grid, 1), Error);
    CHECK_THROWS_AS(ou_autocorrelation({0.0, 1.0, 0.0, 0.0}, 1.0), Error);
    try {
        simulate_ou({-1.0, 1.0, 0.0, 0.0}, grid, 1);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_parameter);
    }
}

TEST_CASE("simulators are deterministic and independent of thread count") {
    const TimeGrid grid{0.0, 0.05, 40};
    const OUParams ou{2.0, 1.5, 0.0, 0.3};
    CHECK(simulate_ou(ou, grid, 99, 3).values == simulate_ou(ou, grid, 99, 3).values);
    CHECK(simulate_ou(ou, grid, 99, 3).values != simulate_ou(ou, grid, 99, 4).values);
    CHECK(simulate_ou(ou, grid, 99, 3).values != simulate_ou(ou, grid, 100, 3).values);

    const auto a = simulate_ou_ensemble(ou, grid, 5, 64, 1);
    const auto b = simulate_ou_ensemble(ou, grid, 5, 64, 4);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].values == b[i].values);

    const KacParams kac{0.1, 1.0, 3.0, 0.0, +1};
    const auto c = simulate_kac_ensemble(kac, grid, 5, 64, true, 1);
    const auto d = simulate_kac_ensemble(kac, grid, 5, 64, true, 3);
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(c[i].x == d[i].x);
        CHECK(c[i].s == d[i].s);
    }
}

TEST_CASE("ou_autocorrelation closed form") {
    CHECK(ou_autocorrelation({1.0, std::numbers::sqrt2, 0.0, 0.0}, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ou_autocorrelation({2.0, 2.0, 0.0, 0.0}, 0.5) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(ou_autocorrelation({2.0, 2.0, 0.0, 0.0}, -0.5) == ou_autocorrelation({2.0, 2.0, 0.0, 0.0}, 0.5));
    CHECK(ou_autocorrelation({1.0, 1.0, 0.0, 0.0}, 1e6) == 0.0);
    CHECK(ou_autocorrelation({1.0, 1.0, 0.0, 0.0}, -1e6) == 0.0);
}

TEST_CASE("OU stationary autocorrelation matches the closed form") {
    // Burn-in of 10 relaxation times, then a lag of 1.
    const OUParams p{1.0, std::numbers::sqrt2, 0.0, 0.0};
    const auto paths = simulate_ou_ensemble(p, {0.0, 1.0, 11}, 2024, 100000);
    std::vector<double> products, level;
    for (const auto& t : paths) {
        products.push_back(t.values[10] * t.values[11]);
        level.push_back(t.values[10]);
    }
    const auto s = sample_stats(products);
    CHECK(std::abs(s.mean - ou_autocorrelation(p, 1.0)) <= 3.0 * s.std_error);
    const auto m = sample_stats(level);
    CHECK(std::abs(m.mean) <= 4.0 * m.std_error);
}

TEST_CASE("Kac without flips is ballistic") {
    const TimeGrid grid{0.0, 0.125, 16};
    const auto a = simulate_kac({0.0, 1.0, 0.0, 3.0, +1}, grid, 1);
    const auto b = simulate_kac({2.0, 1.0, 0.0, 3.0, -1}, grid, 1);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(a.x[k] == 3.0 + grid.time(k));
        CHECK(b.x[k] == 3.0 + grid.time(k));
        CHECK(a.s[k] == 1);
        CHECK(b.s[k] == -1);
    }
}

TEST_CASE("Kac position increments follow the state between flips") {
    const KacParams p{0.3, 1.7, 2.0, -1.0, -1};
    const TimeGrid grid{0.0, 0.01, 2000};
    const auto traj = simulate_kac(p, grid, 11, 5);
    const auto flips = kac_flip_times(p.lambda, grid.t0, grid.t_end(), 11, 5);
    REQUIRE(flips.size() > 10);
    std::size_t f = 0, checked = 0;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        while (f < flips.size() && flips[f] <= grid.time(k)) ++f;
        if (f < flips.size() && flips[f] <= grid.time(k + 1)) continue;
        const double expected = (p.mu + p.v * traj.s[k]) * grid.dt;
        CHECK(std::abs(traj.x[k + 1] - traj.x[k] - expected) <= 1e-12);
        ++checked;
    }
    CHECK(checked > 1000);
}

TEST_CASE("kac_state_autocorrelation") {
    CHECK(kac_state_autocorrelation(0.0, 5.0) == 1.0);
    CHECK(kac_state_autocorrelation(3.0, 0.0) == 1.0);
    CHECK(kac_state_autocorrelation(1.0, std::numbers::ln2 / 2.0) == doctest::Approx(0.5).epsilon(1e-15));
    double previous = 1.0;
    for (double tau = 0.0; tau < 5.0; tau += 0.01) {
        const double c = kac_state_autocorrelation(0.7, tau);
        CHECK(std::abs(c) <= 1.0);
        CHECK(c <= previous);
        CHECK(c == kac_state_autocorrelation(0.7, -tau));
        previous = c;
    }
}

TEST_CASE("Kac state correlation matches exp(-2 lambda t)") {
    const auto paths = simulate_kac_ensemble({0.0, 1.0, 1.0, 0.0, +1}, {0.0, 0.5, 1}, 77, 100000, true);
    std::vector<double> products;
    for (const auto& t : paths) products.push_back(t.s[0] * t.s[1]);
    const auto s = sample_stats(products);
    CHECK(std::abs(s.mean - std::exp(-1.0)) <= 3.0 * s.std_error);
}

TEST_CASE("inter-flip intervals have mean 1/lambda") {
    const double lambda = 2.5;
    std::vector<double> gaps;
    for (std::uint64_t trial = 0; gaps.size() < 20000; ++trial) {
        const auto flips = kac_flip_times(lambda, 0.0, 100.0, 3, trial);
        double last = 0.0;
        for (double t : flips) {
            gaps.push_back(t - last);
            last = t;
        }
    }
    const auto s = sample_stats(gaps);
    const double n = static_cast<double>(gaps.size());
    CHECK(std::abs(s.mean - 1.0 / lambda) <= 4.0 * (1.0 / lambda) / std::sqrt(n));
}

TEST_CASE("MSD closed form agrees with quadrature of the velocity autocorrelation") {
    for (double v : {0.5, 1.0, 3.0})
        for (double lambda : {0.1, 1.0, 7.0})
            for (double t : {0.01, 0.3, 1.0, 4.0}) {
                const double integral =
                    2.0 * v * v * simpson([&](double s) { return (t - s) * std::exp(-2.0 * lambda * s); }, 0.0, t, 20000);
                CHECK(kac_mean_square_displacement(v, lambda, t) == doctest::Approx(integral).epsilon(1e-10));
            }
    CHECK(kac_mean_square_displacement(2.0, 0.0, 3.0) == doctest::Approx(36.0));
}

TEST_CASE("Kac mean squared displacement matches the closed form") {
    const double lambda = 2.0, v = 1.0;
    for (double t : {0.1 / lambda, 1.0 / lambda, 10.0 / lambda}) {
        const auto paths = simulate_kac_ensemble({0.0, v, lambda, 0.0, +1}, {0.0, t, 1}, 31, 100000, true);
        std::vector<double> sq;
        for (const auto& p : paths) sq.push_back(p.x[1] * p.x[1]);
        const auto s = sample_stats(sq);
        CAPTURE(t);
        CHECK(std::abs(s.mean - kac_mean_square_displacement(v, lambda, t)) <= 3.0 * s.std_error);
    }
}

TEST_CASE("Kac walk approaches diffusion for fast switching") {
    const double lambda = 100.0;
    const auto paths =
        simulate_kac_ensemble({0.0, std::sqrt(2.0 * lambda), lambda, 0.0, +1}, {0.0, 1.0, 1}, 8, 100000, true);
    std::vector<double> x;
    for (const auto& p : paths) x.push_back(p.x[1]);
    CHECK(std::abs(sample_stats(x).variance - 2.0) <= 0.05 * 2.0);
}
