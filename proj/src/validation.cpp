#include "lgkac/validation.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "lgkac/correlations.hpp"
#include "lgkac/dirac.hpp"
#include "lgkac/lg_theory.hpp"
#include "lgkac/observables.hpp"
#include "lgkac/rng.hpp"
#include "lgkac/stochastic_processes.hpp"
#include "lgkac/telegrapher.hpp"

namespace lgkac {

namespace {

using nlohmann::json;

class Report {
public:
    void check(const std::string& name, double value, double expected, double tolerance) {
        const bool ok = std::abs(value - expected) <= tolerance;
        passed_ = passed_ && ok;
        checks_.push_back({{"name", name},
                           {"value", value},
                           {"expected", expected},
                           {"tolerance", tolerance},
                           {"passed", ok}});
    }
    void check_below(const std::string& name, double value, double limit) {
        const bool ok = value <= limit;
        passed_ = passed_ && ok;
        checks_.push_back({{"name", name}, {"value", value}, {"limit", limit}, {"passed", ok}});
    }

    json finish(std::uint64_t seed, bool quick) const {
        return {{"seed", seed}, {"quick", quick}, {"checks", checks_}, {"passed", passed_}};
    }

private:
    json checks_ = json::array();
    bool passed_ = true;
};

} // namespace

json run_validation(std::uint64_t seed, bool quick) {
    Report report;
    const std::size_t trials = quick ? 20000 : 100000;

    const LGBound bound = enumerate_lg_bound();
    report.check("enumeration k_max", bound.k_max, 1.0, 0.0);
    report.check("enumeration k_min", bound.k_min, -3.0, 0.0);

    const ViolationReport undamped = violation_region({1.0, 0.0}, {0.01, std::numbers::pi}, 2001);
    report.check("undamped k_max", undamped.k_max, 1.5, 1e-9);
    report.check("undamped tau_star", undamped.tau_star, std::numbers::pi / 3.0, 1e-6);

    {
        Engine engine = make_stream(seed, 0);
        std::uniform_real_distribution<double> log_rate(-3.0, 3.0);
        double worst_excess = -1.0, worst_identity = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const double gamma = std::pow(10.0, log_rate(engine));
            const double tau = std::pow(10.0, log_rate(engine));
            const double k = k_exponential(gamma, tau);
            const double e = std::exp(-gamma * tau);
            worst_excess = std::max(worst_excess, k - 1.0);
            worst_identity = std::max(worst_identity, std::abs(k - (1.0 - (1.0 - e) * (1.0 - e))));
        }
        report.check_below("k_exponential max(K - 1)", worst_excess, 0.0);
        report.check_below("k_exponential identity residual", worst_identity, 1e-12);
    }

    {
        const TimeGrid grid{0.0, 0.25, 4};
        const auto paths = simulate_kac_ensemble({0.0, 1.0, 1.0, 0.0, +1}, grid, seed, trials, true);
        std::vector<BinarySeries> states;
        states.reserve(paths.size());
        for (std::size_t i = 0; i < paths.size(); ++i)
            states.push_back(kac_internal_state(paths[i], static_cast<std::int64_t>(i)));
        for (std::size_t k : {1u, 2u, 4u}) {
            const auto c = correlate_ensemble(states, 0, k);
            report.check("kac <s(t)s(0)> t=" + std::to_string(grid.time(k)), c.value,
                         kac_state_autocorrelation(1.0, grid.time(k)), 3.0 * c.std_error);
        }
    }

    {
        // Burn-in of 10 relaxation times, then lags 0.5, 1, 2.
        const OUParams ou{1.0, std::numbers::sqrt2, 0.0, 0.0};
        const TimeGrid grid{0.0, 0.5, 24};
        const auto paths = simulate_ou_ensemble(ou, grid, seed + 1, trials);
        for (std::size_t lag : {1u, 2u, 4u}) {
            ProductMoments m;
            for (const Trajectory& p : paths) m.add(p.values[20] * p.values[20 + lag]);
            const double se = m.sample_std() / std::sqrt(static_cast<double>(m.count));
            report.check("ou autocorrelation tau=" + std::to_string(grid.dt * static_cast<double>(lag)), m.mean(),
                         ou_autocorrelation(ou, grid.dt * static_cast<double>(lag)), 3.0 * se);
        }
    }

    {
        const TelegraphParams tp{0.0, 1.0, 1.0, 1e-3};
        report.check_below("telegraph vs Monte Carlo L1", compare_pde_mc(tp, 1.0, 100000, seed + 2, 64), 0.05);

        SpaceGrid grid{-1.5, 1e-3, 3001};
        const Field1D end = evolve_telegraph(Field1D::delta(grid, 0.0), tp, 1.0);
        const Moments m = telegraph_moments(end);
        const double expected = kac_mean_square_displacement(1.0, 1.0, 1.0);
        report.check("telegraph variance t=1 (relative)", m.variance / expected, 1.0, 0.02);
        report.check("telegraph mass", m.mass, 1.0, 1e-10);
    }

    {
        const SpaceGrid grid{0.0, 0.01, 64};
        const DiracParams dp{1.0, 1.0, 0.01};
        SpinorField u = default_test_spinor(grid);
        const double n0 = u.norm_squared();
        u = evolve_dirac(u, dp, 1.0);
        report.check_below("dirac norm drift per unit time", std::abs(u.norm_squared() - n0) / n0, 1e-10);
        report.check("dirac overlap |<u0,u(pi/2)>|", std::abs(envelope_correlation(dp, std::numbers::pi / 2.0)), 0.0,
                     1e-6);
    }

    {
        const SpaceGrid grid{-std::numbers::pi, 2.0 * std::numbers::pi / 32.0, 32};
        const double e1 = continuation_check(1.0, 1.0, grid, 1e-3, 0.5);
        const double e2 = continuation_check(1.0, 1.0, grid, 5e-4, 0.5);
        report.check("continuation observed order", std::log2(e1 / e2), 1.0, 0.2);
        report.check_below("continuation degenerate deviation", degenerate_transport_deviation(1.0, grid, 1e-3, 0.5),
                           1e-12);
    }

    return report.finish(seed, quick);
}

} // namespace lgkac
