#include "lgkac/lg_theory.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/tools/minima.hpp>

#include "lgkac/error.hpp"

namespace lgkac {

namespace {

constexpr double root_tolerance = 1e-10;
// K - 1 at or below this counts as touching the bound, not exceeding it.
constexpr double touch_tolerance = 1e-12;

// Bisection for a sign change of f between a (f > 0) and b (f <= 0).
template <class F>
double bisect_crossing(F&& f, double a, double b) {
    const bool positive_at_a = f(a) > 0.0;
    while (std::abs(b - a) > root_tolerance) {
        const double mid = 0.5 * (a + b);
        if ((f(mid) > 0.0) == positive_at_a)
            a = mid;
        else
            b = mid;
    }
    return 0.5 * (a + b);
}

template <class F>
std::pair<double, double> refine_minimum(F&& f, double a, double b) {
    const auto [x, fx] = boost::math::tools::brent_find_minima(f, a, b, std::numeric_limits<double>::digits);
    return {x, fx};
}

} // namespace

void OscillatoryModel::validate() const {
    require(std::isfinite(omega) && omega >= 0.0, ErrorKind::invalid_parameter,
            "oscillation frequency omega must be finite and >= 0");
    require(std::isfinite(gamma) && gamma >= 0.0, ErrorKind::invalid_parameter,
            "damping gamma must be finite and >= 0");
}

LGBound enumerate_lg_bound() {
    LGBound bound{std::numeric_limits<int>::min(), std::numeric_limits<int>::max()};
    constexpr std::array<int, 2> values{+1, -1};
    for (int q1 : values)
        for (int q2 : values)
            for (int q3 : values) {
                const int k = q1 * q2 + q2 * q3 - q1 * q3;
                bound.k_max = std::max(bound.k_max, k);
                bound.k_min = std::min(bound.k_min, k);
            }
    return bound;
}

double k_exponential(double gamma, double tau) {
    const double e = std::exp(-gamma * tau);
    return 2.0 * e - e * e;
}

double k_damped_oscillatory(const OscillatoryModel& model, double tau) {
    const double e = std::exp(-model.gamma * tau);
    return 2.0 * std::cos(model.omega * tau) * e - std::cos(2.0 * model.omega * tau) * e * e;
}

double k_undamped_identity(double theta) {
    const double c = std::cos(theta);
    return 1.0 + 2.0 * c * (1.0 - c);
}

ViolationReport violation_region(const OscillatoryModel& model, std::pair<double, double> tau_range,
                                 std::size_t grid_points) {
    model.validate();
    const auto [lo, hi] = tau_range;
    require(std::isfinite(lo) && std::isfinite(hi) && lo > 0.0 && lo < hi, ErrorKind::invalid_input,
            "tau range must satisfy 0 < lo < hi");
    require(grid_points >= 100, ErrorKind::invalid_input, "violation scan needs at least 100 points");

    const auto excess = [&model](double tau) { return k_damped_oscillatory(model, tau) - 1.0; };
    const double step = (hi - lo) / static_cast<double>(grid_points - 1);
    std::vector<double> tau(grid_points), f(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
        tau[i] = i + 1 == grid_points ? hi : lo + static_cast<double>(i) * step;
        f[i] = excess(tau[i]);
    }

    ViolationReport report;

    const auto best = static_cast<std::size_t>(std::max_element(f.begin(), f.end()) - f.begin());
    const double a = tau[best == 0 ? 0 : best - 1];
    const double b = tau[std::min(best + 1, grid_points - 1)];
    const auto [t_star, neg_f] = refine_minimum([&](double t) { return -excess(t); }, a, b);
    report.tau_star = -neg_f >= f[best] ? t_star : tau[best];
    report.k_max = k_damped_oscillatory(model, report.tau_star);

    // Walk runs of positive samples. Inside a run, an interior local minimum
    // where K touches 1 (e.g. omega tau = 2 pi n without damping) splits it.
    std::size_t i = 0;
    while (i < grid_points) {
        if (f[i] <= 0.0) {
            ++i;
            continue;
        }
        double start = i == 0 ? lo : bisect_crossing(excess, tau[i], tau[i - 1]);
        std::size_t j = i;
        while (j + 1 < grid_points && f[j + 1] > 0.0) {
            if (j > i && f[j] <= f[j - 1] && f[j] <= f[j + 1]) {
                const auto [t_min, f_min] = refine_minimum(excess, tau[j - 1], tau[j + 1]);
                if (f_min <= touch_tolerance && t_min - start > step) {
                    report.violating_intervals.emplace_back(start, t_min);
                    start = t_min;
                }
            }
            ++j;
        }
        const double end = j + 1 == grid_points ? hi : bisect_crossing(excess, tau[j], tau[j + 1]);
        report.violating_intervals.emplace_back(start, end);
        i = j + 1;
    }
    return report;
}

} // namespace lgkac
