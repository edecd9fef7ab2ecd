#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "lgkac/grid.hpp"

namespace lgkac {

/// Partial densities P+ and P- of the two Kac states on a periodic grid.
struct Field1D {
    SpaceGrid grid;
    std::vector<double> p_plus;
    std::vector<double> p_minus;

    /// Unit mass in the cell containing x, split equally between the states.
    static Field1D delta(const SpaceGrid& grid, double x);

    double mass() const;
    std::vector<double> total() const;
};

struct TelegraphParams {
    double mu = 0.0;
    double v = 1.0;
    double lambda = 0.0;
    double dt = 1e-3;

    /// Parameter checks plus the CFL condition (|mu| + v) dt / dx <= 1.
    void validate(const SpaceGrid& grid) const;
};

struct Moments {
    double mass = 0.0;
    double mean = 0.0;
    double variance = 0.0;
};

using TelegraphObserver = std::function<void(std::size_t step, const Field1D&)>;

/// Advect P+ at speed mu + v and P- at mu - v (upwind, exact shift at
/// Courant number 1), then mix exactly over dt with r = exp(-2 lambda dt):
/// P+- <- ((1 + r)/2) P+- + ((1 - r)/2) P-+.
Field1D step_telegraph(const Field1D& field, const TelegraphParams& params);

/// Repeated steps up to t_final (a multiple of dt). The observer, when set,
/// sees the initial field (step 0) and the field after every step.
Field1D evolve_telegraph(const Field1D& field, const TelegraphParams& params, double t_final,
                         const TelegraphObserver& observer = {});

Moments telegraph_moments(const Field1D& field);

/// Semi-discrete generator on (P+[0..n), P-[0..n)): upwind advection blocks
/// plus flip coupling lambda (sigma_x - I). Limited to 256 cells.
Eigen::MatrixXd telegraph_generator_matrix(const TelegraphParams& params, const SpaceGrid& grid);

/// Probability mass of the field in n_bins equal bins over [lo, hi), cells
/// assigned by centre. Normalised to sum 1.
std::vector<double> bin_field(const Field1D& field, double lo, double hi, std::size_t n_bins);

/// Normalised histogram of points over [lo, hi) with the same binning rule.
std::vector<double> bin_points(const std::vector<double>& xs, double lo, double hi, std::size_t n_bins);

/// L1 distance between the PDE density at t_final and a histogram of
/// simulate_kac endpoints, both started from x = 0 with s = +1 or -1 equally
/// often. The PDE runs on a grid with dx = (|mu| + v) dt centred on 0; bins
/// cover +-1.2 (|mu| + v) t_final.
double compare_pde_mc(const TelegraphParams& params, double t_final, std::size_t n_traj,
                      std::uint64_t seed, std::size_t n_bins);

} // namespace lgkac
