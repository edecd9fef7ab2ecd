#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "lgkac/error.hpp"
#include "lgkac/observables.hpp"
#include "lgkac/rng.hpp"

using namespace lgkac;

namespace {

Trajectory make_trajectory(std::vector<double> values) {
    return {{0.0, 1.0, values.size() - 1}, std::move(values)};
}

bool binary_alphabet(const BinarySeries& s) {
    return std::all_of(s.q.begin(), s.q.end(), [](int q) { return q == 1 || q == -1; });
}

} // namespace

TEST_CASE("threshold readout") {
    CHECK(binarize_threshold(make_trajectory({1.0, 2.0, 3.0}), {0.5}).q == std::vector<std::int8_t>{1, 1, 1});
    CHECK(binarize_threshold(make_trajectory({0.5, 0.5}), {0.5}).q == std::vector<std::int8_t>{1, 1});
    CHECK(binarize_threshold(make_trajectory({-1.0, 0.0, 2.0}), {0.0}).q == std::vector<std::int8_t>{-1, 1, 1});
    CHECK_THROWS_AS(binarize_threshold(make_trajectory({NAN, 0.0}), {0.0}), Error);
}

TEST_CASE("threshold readout is monotone in the threshold") {
    Engine engine = make_stream(4, 0);
    std::normal_distribution<double> normal;
    std::vector<double> values(500);
    for (double& v : values) v = normal(engine);
    const auto traj = make_trajectory(values);
    BinarySeries previous = binarize_threshold(traj, {-3.0});
    for (double th = -3.0; th <= 3.0; th += 0.05) {
        const BinarySeries current = binarize_threshold(traj, {th});
        CHECK(current.q.size() == traj.values.size());
        CHECK(binary_alphabet(current));
        for (std::size_t k = 0; k < values.size(); ++k) CHECK_FALSE((previous.q[k] == -1 && current.q[k] == 1));
        previous = current;
    }
}

TEST_CASE("spike readout") {
    const TimeGrid grid{0.0, 0.1, 10};
    const std::vector<double> none;
    const auto empty = binarize_spikes(none, grid, {0.1});
    CHECK(std::all_of(empty.q.begin(), empty.q.end(), [](int q) { return q == -1; }));

    const std::vector<double> on_grid{grid.time(4)};
    const auto one = binarize_spikes(on_grid, grid, {0.1});
    for (std::size_t k = 0; k < grid.size(); ++k) CHECK(one.q[k] == (k == 4 ? 1 : -1));

    const std::vector<double> pair{0.41, 0.43};
    CHECK(binarize_spikes(pair, grid, {0.1}).q == one.q);

    // Half-open: a spike on a bin's upper edge belongs to the next bin.
    const std::vector<double> edge{0.45};
    const auto e = binarize_spikes(edge, grid, {0.1});
    CHECK(e.q[4] == -1);
    CHECK(e.q[5] == 1);

    // A wider bin covers neighbouring grid points.
    const auto wide = binarize_spikes(on_grid, grid, {0.3});
    for (std::size_t k = 0; k < grid.size(); ++k) CHECK(wide.q[k] == (k >= 3 && k <= 5 ? 1 : -1));
}

TEST_CASE("spike readout ignores duplicate spikes in one bin") {
    const TimeGrid grid{0.0, 0.01, 1000};
    Engine engine = make_stream(9, 1);
    std::uniform_real_distribution<double> uniform(0.0, 10.0);
    std::vector<double> spikes(200);
    for (double& s : spikes) s = uniform(engine);
    std::sort(spikes.begin(), spikes.end());
    std::vector<double> doubled;
    for (double s : spikes) {
        doubled.push_back(s);
        doubled.push_back(s);
    }
    const auto a = binarize_spikes(spikes, grid, {0.02});
    CHECK(a.q == binarize_spikes(doubled, grid, {0.02}).q);
    CHECK(binary_alphabet(a));
}

TEST_CASE("spike readout input errors") {
    const TimeGrid grid{0.0, 0.1, 10};
    const std::vector<double> unsorted{0.5, 0.2};
    const std::vector<double> outside{2.0};
    const std::vector<double> fine{0.2};
    CHECK_THROWS_AS(binarize_spikes(unsorted, grid, {0.1}), Error);
    CHECK_THROWS_AS(binarize_spikes(outside, grid, {0.1}), Error);
    CHECK_THROWS_AS(binarize_spikes(fine, grid, {0.15}), Error);
    CHECK_THROWS_AS(binarize_spikes(fine, grid, {0.0}), Error);
    try {
        binarize_spikes(unsorted, grid, {0.1});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_input);
    }
}

TEST_CASE("Kac internal state readout") {
    const TimeGrid grid{0.0, 0.1, 20};
    const auto up = kac_internal_state(simulate_kac({0.0, 1.0, 0.0, 0.0, +1}, grid, 1));
    const auto down = kac_internal_state(simulate_kac({0.0, 1.0, 0.0, 0.0, -1}, grid, 1));
    CHECK(std::all_of(up.q.begin(), up.q.end(), [](int q) { return q == 1; }));
    CHECK(std::all_of(down.q.begin(), down.q.end(), [](int q) { return q == -1; }));

    const auto flipping = simulate_kac({0.0, 1.0, 5.0, 0.0, +1}, grid, 3);
    const auto s = kac_internal_state(flipping, 12);
    CHECK(s.trial_id == 12);
    CHECK(s.q == flipping.s);
}

TEST_CASE("Kac internal state tracks exp(-2t) over an ensemble") {
    const TimeGrid grid{0.0, 0.25, 4};
    const auto paths = simulate_kac_ensemble({0.0, 1.0, 1.0, 0.0, +1}, grid, 41, 40000, true);
    for (std::size_t k = 1; k <= 4; ++k) {
        double sum = 0.0, sum_sq = 0.0;
        for (std::size_t i = 0; i < paths.size(); ++i) {
            const auto s = kac_internal_state(paths[i]);
            const double p = s.q[0] * s.q[k];
            sum += p;
            sum_sq += p * p;
        }
        const double n = static_cast<double>(paths.size());
        const double mean = sum / n;
        const double se = std::sqrt((sum_sq / n - mean * mean) / (n - 1.0));
        CHECK(std::abs(mean - std::exp(-2.0 * grid.time(k))) <= 3.0 * se);
    }
}
