#pragma once

#include <cstdint>
#include <vector>

#include "lgkac/grid.hpp"
#include "lgkac/parallel.hpp"

namespace lgkac {

/// Linearised membrane dynamics du = -gamma u dt + sigma dW around v_rest.
struct OUParams {
    double gamma = 1.0;  // relaxation rate, 1/s
    double sigma = 0.0;  // noise amplitude, units/sqrt(s)
    double v_rest = 0.0;
    double v_init = 0.0;

    void validate() const;
};

/// Persistent walk dX/dt = mu + v s(t) with s flipping at rate lambda.
struct KacParams {
    double mu = 0.0;
    double v = 1.0;
    double lambda = 0.0;
    double x_init = 0.0;
    int s_init = +1;

    void validate() const;
};

struct Trajectory {
    TimeGrid grid;
    std::vector<double> values;
};

struct KacTrajectory {
    TimeGrid grid;
    std::vector<double> x;
    std::vector<std::int8_t> s;
};

/// Exact Gaussian transition kernel per step; returned values are v_rest + u.
/// `trial` selects the sub-stream so ensembles are order independent.
Trajectory simulate_ou(const OUParams& params, const TimeGrid& grid, std::uint64_t seed,
                       std::uint64_t trial = 0);

/// Flip times are drawn as exponential waiting times and the position is
/// integrated exactly between flips; the grid is a readout only.
KacTrajectory simulate_kac(const KacParams& params, const TimeGrid& grid, std::uint64_t seed,
                           std::uint64_t trial = 0);

/// Trial i of the ensemble is simulate_*(params, grid, seed, i).
std::vector<Trajectory> simulate_ou_ensemble(const OUParams& params, const TimeGrid& grid,
                                             std::uint64_t seed, std::size_t trials,
                                             unsigned threads = default_threads());

/// When `alternate_initial_state` is set, even trials start in s_init and odd
/// trials in -s_init (an exactly balanced initial state).
std::vector<KacTrajectory> simulate_kac_ensemble(const KacParams& params, const TimeGrid& grid,
                                                 std::uint64_t seed, std::size_t trials,
                                                 bool alternate_initial_state = false,
                                                 unsigned threads = default_threads());

/// Flip times of the Kac internal state in (t_start, t_end], from the same
/// sub-stream simulate_kac uses.
std::vector<double> kac_flip_times(double lambda, double t_start, double t_end,
                                   std::uint64_t seed, std::uint64_t trial = 0);

/// Stationary autocovariance sigma^2/(2 gamma) exp(-gamma |tau|).
double ou_autocorrelation(const OUParams& params, double tau);

/// <s(t+tau) s(t)> = exp(-2 lambda |tau|).
double kac_state_autocorrelation(double lambda, double tau);

/// Mean squared displacement of the unbiased (mu = 0) Kac walk,
/// (v^2 / (2 lambda^2)) (2 lambda t - 1 + exp(-2 lambda t)); v^2 t^2 at lambda = 0.
double kac_mean_square_displacement(double v, double lambda, double t);

} // namespace lgkac
