#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lgkac/grid.hpp"

namespace lgkac {

using complex = std::complex<double>;

/// Two-component amplitude (u+, u-) of the chiral Dirac form on a periodic grid.
struct SpinorField {
    SpaceGrid grid;
    std::vector<complex> u_plus;
    std::vector<complex> u_minus;

    /// Sum of (|u+|^2 + |u-|^2) dx.
    double norm_squared() const;
};

struct DiracParams {
    double c_speed = 1.0;
    double m_tilde = 0.0;  // mass rate, plays the role of mc^2/hbar (1/s)
    double dt = 1e-3;

    /// Parameter checks plus c dt / dx <= 1.
    void validate(const SpaceGrid& grid) const;
};

/// Sum of conj(a) b dx over both components.
complex inner_product(const SpinorField& a, const SpinorField& b);

/// Shift u+ right and u- left by c dt (upwind, exact at c dt = dx), then apply
/// exp(i m dt (I - sigma_x)) pointwise. Unitary when c dt = dx.
SpinorField step_dirac(const SpinorField& field, const DiracParams& params);

SpinorField evolve_dirac(const SpinorField& field, const DiracParams& params, double t_final);

/// The telegraph generator with lambda replaced by -i m_tilde. Because the
/// generator is affine in lambda this is G(0) - i m (G(1) - G(0)).
Eigen::MatrixXcd continued_generator(double c_speed, double m_tilde, const SpaceGrid& grid);

/// Smooth wave packet used as the default continuation test spinor.
SpinorField default_test_spinor(const SpaceGrid& grid);

/// Max pointwise |expm(G(-i m) t) u0 - evolve_dirac(u0)| with c = v_or_c and
/// m = lambda_val. First order in dt for a fixed grid.
double continuation_check(double v_or_c, double lambda_val, const SpaceGrid& grid, double dt,
                          double t_final, const std::optional<SpinorField>& initial = std::nullopt);

/// Degenerate limit lambda = m = 0: max pointwise difference between
/// evolve_telegraph (applied to the real and imaginary parts) and evolve_dirac
/// on the same data. Both reduce to the same transport.
double degenerate_transport_deviation(double v_or_c, const SpaceGrid& grid, double dt, double t_final,
                                      const std::optional<SpinorField>& initial = std::nullopt);

/// Normalised overlap <u(0), u(t)> of a spatially uniform spinor started at
/// (1, 0), obtained by running step_dirac (plus a final partial mixing step
/// when t is not a multiple of dt). Analytically (1 + exp(2 i m t)) / 2.
complex envelope_correlation(const DiracParams& params, double t);

} // namespace lgkac
