#include "lgkac/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "advection.hpp"
#include "lgkac/error.hpp"
#include "lgkac/telegrapher.hpp"

namespace lgkac {

namespace {

constexpr std::size_t max_generator_cells = 256;

void check_field(const SpinorField& field) {
    field.grid.validate();
    require(field.u_plus.size() == field.grid.n_cells && field.u_minus.size() == field.grid.n_cells,
            ErrorKind::invalid_input, "spinor length does not match its grid");
}

// exp(i theta (I - sigma_x)) = a I + b sigma_x.
void mix(SpinorField& f, double theta) {
    const complex phase = std::exp(complex(0.0, 2.0 * theta));
    const complex a = 0.5 * (1.0 + phase);
    const complex b = 0.5 * (1.0 - phase);
    for (std::size_t j = 0; j < f.u_plus.size(); ++j) {
        const complex p = f.u_plus[j], m = f.u_minus[j];
        f.u_plus[j] = a * p + b * m;
        f.u_minus[j] = a * m + b * p;
    }
}

Eigen::VectorXcd stack(const SpinorField& f) {
    const auto n = static_cast<Eigen::Index>(f.grid.n_cells);
    Eigen::VectorXcd v(2 * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        v(j) = f.u_plus[static_cast<std::size_t>(j)];
        v(n + j) = f.u_minus[static_cast<std::size_t>(j)];
    }
    return v;
}

} // namespace

double SpinorField::norm_squared() const {
    double sum = 0.0;
    for (std::size_t j = 0; j < u_plus.size(); ++j) sum += std::norm(u_plus[j]) + std::norm(u_minus[j]);
    return sum * grid.dx;
}

void DiracParams::validate(const SpaceGrid& grid) const {
    require(std::isfinite(c_speed) && std::isfinite(m_tilde) && std::isfinite(dt),
            ErrorKind::invalid_parameter, "Dirac parameters must be finite");
    require(c_speed > 0.0, ErrorKind::invalid_parameter, "Dirac speed c must be positive");
    require(m_tilde >= 0.0, ErrorKind::invalid_parameter, "Dirac mass rate must be >= 0");
    require(dt > 0.0, ErrorKind::invalid_parameter, "Dirac time step must be positive");
    const double cfl = c_speed * dt / grid.dx;
    require(cfl <= 1.0 + 1e-12, ErrorKind::configuration,
            "CFL condition violated: c dt / dx = " + std::to_string(cfl) + " > 1");
}

complex inner_product(const SpinorField& a, const SpinorField& b) {
    require(a.grid == b.grid && a.u_plus.size() == b.u_plus.size(), ErrorKind::invalid_input,
            "spinors are on different grids");
    complex sum = 0.0;
    for (std::size_t j = 0; j < a.u_plus.size(); ++j)
        sum += std::conj(a.u_plus[j]) * b.u_plus[j] + std::conj(a.u_minus[j]) * b.u_minus[j];
    return sum * a.grid.dx;
}

SpinorField step_dirac(const SpinorField& field, const DiracParams& params) {
    check_field(field);
    params.validate(field.grid);
    SpinorField out = field;
    std::vector<complex> scratch;
    const double courant = params.c_speed * params.dt / field.grid.dx;
    detail::advect_periodic(out.u_plus, courant, scratch);
    detail::advect_periodic(out.u_minus, -courant, scratch);
    mix(out, params.m_tilde * params.dt);
    return out;
}

SpinorField evolve_dirac(const SpinorField& field, const DiracParams& params, double t_final) {
    check_field(field);
    params.validate(field.grid);
    const std::size_t steps = whole_steps(t_final, params.dt);
    SpinorField current = field;
    for (std::size_t n = 0; n < steps; ++n) current = step_dirac(current, params);
    return current;
}

Eigen::MatrixXcd continued_generator(double c_speed, double m_tilde, const SpaceGrid& grid) {
    grid.validate();
    require(grid.n_cells <= max_generator_cells, ErrorKind::size_exceeded,
            "generator matrix limited to " + std::to_string(max_generator_cells) + " cells");
    // dt only enters the CFL check, so the largest admissible value is used.
    const double dt = grid.dx / c_speed;
    const Eigen::MatrixXd g0 = telegraph_generator_matrix({0.0, c_speed, 0.0, dt}, grid);
    const Eigen::MatrixXd g1 = telegraph_generator_matrix({0.0, c_speed, 1.0, dt}, grid);
    const complex lambda(0.0, -m_tilde);
    return g0.cast<complex>() + lambda * (g1 - g0).cast<complex>();
}

SpinorField default_test_spinor(const SpaceGrid& grid) {
    grid.validate();
    const double centre = grid.x0 + 0.5 * grid.length();
    const double width = grid.length() / 8.0;
    const double k = 2.0 * std::numbers::pi / grid.length();
    SpinorField f{grid, std::vector<complex>(grid.n_cells), std::vector<complex>(grid.n_cells)};
    for (std::size_t j = 0; j < grid.n_cells; ++j) {
        const double d = (grid.x(j) - centre) / width;
        const double envelope = std::exp(-0.5 * d * d);
        f.u_plus[j] = envelope * std::exp(complex(0.0, k * grid.x(j)));
        f.u_minus[j] = 0.5 * envelope;
    }
    return f;
}

double continuation_check(double v_or_c, double lambda_val, const SpaceGrid& grid, double dt,
                          double t_final, const std::optional<SpinorField>& initial) {
    require(std::isfinite(lambda_val) && lambda_val >= 0.0, ErrorKind::invalid_parameter,
            "continuation rate must be >= 0");
    const SpinorField u0 = initial ? *initial : default_test_spinor(grid);
    require(u0.grid == grid, ErrorKind::invalid_input, "initial spinor is on a different grid");
    const DiracParams params{v_or_c, lambda_val, dt};
    params.validate(grid);
    const std::size_t steps = whole_steps(t_final, dt);

    const Eigen::MatrixXcd propagator =
        (continued_generator(v_or_c, lambda_val, grid) * complex(static_cast<double>(steps) * dt)).exp();
    const Eigen::VectorXcd expected = propagator * stack(u0);
    const Eigen::VectorXcd actual = stack(evolve_dirac(u0, params, t_final));
    return (expected - actual).cwiseAbs().maxCoeff();
}

double degenerate_transport_deviation(double v_or_c, const SpaceGrid& grid, double dt, double t_final,
                                      const std::optional<SpinorField>& initial) {
    const SpinorField u0 = initial ? *initial : default_test_spinor(grid);
    require(u0.grid == grid, ErrorKind::invalid_input, "initial spinor is on a different grid");
    const SpinorField dirac = evolve_dirac(u0, {v_or_c, 0.0, dt}, t_final);

    const auto part = [&](auto&& take) {
        Field1D f{grid, std::vector<double>(grid.n_cells), std::vector<double>(grid.n_cells)};
        for (std::size_t j = 0; j < grid.n_cells; ++j) {
            f.p_plus[j] = take(u0.u_plus[j]);
            f.p_minus[j] = take(u0.u_minus[j]);
        }
        return evolve_telegraph(f, {0.0, v_or_c, 0.0, dt}, t_final);
    };
    const Field1D re = part([](complex z) { return z.real(); });
    const Field1D im = part([](complex z) { return z.imag(); });

    double worst = 0.0;
    for (std::size_t j = 0; j < grid.n_cells; ++j) {
        worst = std::max(worst, std::abs(complex(re.p_plus[j], im.p_plus[j]) - dirac.u_plus[j]));
        worst = std::max(worst, std::abs(complex(re.p_minus[j], im.p_minus[j]) - dirac.u_minus[j]));
    }
    return worst;
}

complex envelope_correlation(const DiracParams& params, double t) {
    require(std::isfinite(t) && t >= 0.0, ErrorKind::invalid_parameter, "time must be finite and >= 0");
    const SpaceGrid grid{0.0, params.c_speed * params.dt, 8};
    SpinorField u0{grid, std::vector<complex>(grid.n_cells, 1.0), std::vector<complex>(grid.n_cells, 0.0)};

    const auto steps = static_cast<std::size_t>(std::floor(t / params.dt));
    SpinorField u = u0;
    for (std::size_t n = 0; n < steps; ++n) u = step_dirac(u, params);
    // A uniform field is unchanged by advection, so the remainder is pure mixing.
    mix(u, params.m_tilde * (t - static_cast<double>(steps) * params.dt));
    return inner_product(u0, u) / u0.norm_squared();
}

} // namespace lgkac
