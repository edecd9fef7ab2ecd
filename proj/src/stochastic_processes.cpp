#include "lgkac/stochastic_processes.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "lgkac/error.hpp"
#include "lgkac/rng.hpp"

namespace lgkac {

namespace {

// Successive flip times of a rate-lambda Poisson clock started at t_start.
class FlipClock {
public:
    FlipClock(double lambda, double t_start, std::uint64_t seed, std::uint64_t trial)
        : engine_(make_stream(seed, trial)),
          waiting_(lambda > 0.0 ? lambda : 1.0),
          active_(lambda > 0.0),
          next_(t_start) {
        advance();
    }

    double next() const noexcept { return next_; }

    void advance() {
        next_ = active_ ? next_ + waiting_(engine_) : std::numeric_limits<double>::infinity();
    }

private:
    Engine engine_;
    std::exponential_distribution<double> waiting_;
    bool active_;
    double next_;
};

} // namespace

void OUParams::validate() const {
    require(std::isfinite(gamma) && std::isfinite(sigma) && std::isfinite(v_rest) &&
                std::isfinite(v_init),
            ErrorKind::invalid_parameter, "OU parameters must be finite");
    require(gamma > 0.0, ErrorKind::invalid_parameter,
            "OU relaxation rate gamma must be positive (gamma = 0 has no stationary state)");
    require(sigma >= 0.0, ErrorKind::invalid_parameter, "OU noise amplitude sigma must be >= 0");
}

void KacParams::validate() const {
    require(std::isfinite(mu) && std::isfinite(v) && std::isfinite(lambda) && std::isfinite(x_init),
            ErrorKind::invalid_parameter, "Kac parameters must be finite");
    require(v > 0.0, ErrorKind::invalid_parameter, "Kac speed v must be positive");
    require(lambda >= 0.0, ErrorKind::invalid_parameter, "Kac switching rate lambda must be >= 0");
    require(s_init == 1 || s_init == -1, ErrorKind::invalid_parameter,
            "Kac initial state must be +1 or -1");
}

Trajectory simulate_ou(const OUParams& params, const TimeGrid& grid, std::uint64_t seed,
                       std::uint64_t trial) {
    params.validate();
    grid.validate();

    const double decay = std::exp(-params.gamma * grid.dt);
    const double spread =
        params.sigma * std::sqrt(-std::expm1(-2.0 * params.gamma * grid.dt) / (2.0 * params.gamma));

    Engine engine = make_stream(seed, trial);
    std::normal_distribution<double> normal(0.0, 1.0);

    Trajectory out{grid, std::vector<double>(grid.size())};
    double u = params.v_init - params.v_rest;
    out.values[0] = params.v_rest + u;
    for (std::size_t k = 1; k < grid.size(); ++k) {
        u = u * decay + (spread > 0.0 ? spread * normal(engine) : 0.0);
        out.values[k] = params.v_rest + u;
    }
    return out;
}

KacTrajectory simulate_kac(const KacParams& params, const TimeGrid& grid, std::uint64_t seed,
                           std::uint64_t trial) {
    params.validate();
    grid.validate();

    KacTrajectory out{grid, std::vector<double>(grid.size()), std::vector<std::int8_t>(grid.size())};
    FlipClock clock(params.lambda, grid.t0, seed, trial);

    // Position and time of the last flip; grid samples are read out from these.
    double x = params.x_init;
    double t_last = grid.t0;
    int s = params.s_init;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double t = grid.time(k);
        while (clock.next() <= t) {
            x += (params.mu + params.v * s) * (clock.next() - t_last);
            t_last = clock.next();
            s = -s;
            clock.advance();
        }
        out.x[k] = x + (params.mu + params.v * s) * (t - t_last);
        out.s[k] = static_cast<std::int8_t>(s);
    }
    return out;
}

std::vector<Trajectory> simulate_ou_ensemble(const OUParams& params, const TimeGrid& grid,
                                             std::uint64_t seed, std::size_t trials,
                                             unsigned threads) {
    params.validate();
    grid.validate();
    std::vector<Trajectory> out(trials);
    parallel_for(trials, threads, [&](std::size_t i) { out[i] = simulate_ou(params, grid, seed, i); });
    return out;
}

std::vector<KacTrajectory> simulate_kac_ensemble(const KacParams& params, const TimeGrid& grid,
                                                 std::uint64_t seed, std::size_t trials,
                                                 bool alternate_initial_state, unsigned threads) {
    params.validate();
    grid.validate();
    std::vector<KacTrajectory> out(trials);
    parallel_for(trials, threads, [&](std::size_t i) {
        KacParams p = params;
        if (alternate_initial_state && i % 2 == 1) p.s_init = -p.s_init;
        out[i] = simulate_kac(p, grid, seed, i);
    });
    return out;
}

std::vector<double> kac_flip_times(double lambda, double t_start, double t_end,
                                   std::uint64_t seed, std::uint64_t trial) {
    require(std::isfinite(lambda) && lambda >= 0.0, ErrorKind::invalid_parameter,
            "Kac switching rate lambda must be >= 0");
    require(std::isfinite(t_start) && std::isfinite(t_end) && t_end >= t_start,
            ErrorKind::invalid_parameter, "flip-time window must be finite and ordered");
    std::vector<double> times;
    for (FlipClock clock(lambda, t_start, seed, trial); clock.next() <= t_end; clock.advance())
        times.push_back(clock.next());
    return times;
}

double ou_autocorrelation(const OUParams& params, double tau) {
    require(std::isfinite(params.gamma) && params.gamma > 0.0, ErrorKind::invalid_parameter,
            "OU relaxation rate gamma must be positive");
    return params.sigma * params.sigma / (2.0 * params.gamma) * std::exp(-params.gamma * std::abs(tau));
}

double kac_state_autocorrelation(double lambda, double tau) {
    return std::exp(-2.0 * lambda * std::abs(tau));
}

double kac_mean_square_displacement(double v, double lambda, double t) {
    if (lambda == 0.0) return v * v * t * t;
    const double a = 2.0 * lambda * t;
    // a - 1 + exp(-a) == a + expm1(-a), which keeps precision for small a.
    return v * v / (2.0 * lambda * lambda) * (a + std::expm1(-a));
}

} // namespace lgkac
