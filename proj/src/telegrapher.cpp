#include "lgkac/telegrapher.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "advection.hpp"
#include "lgkac/error.hpp"
#include "lgkac/stochastic_processes.hpp"

namespace lgkac {

namespace {

constexpr std::size_t max_generator_cells = 256;

void check_field(const Field1D& field) {
    field.grid.validate();
    require(field.p_plus.size() == field.grid.n_cells && field.p_minus.size() == field.grid.n_cells,
            ErrorKind::invalid_input, "field length does not match its grid");
}

std::size_t bin_index(double x, double lo, double width, std::size_t n_bins) {
    const double b = std::floor((x - lo) / width);
    if (b < 0.0 || b >= static_cast<double>(n_bins)) return n_bins;
    return static_cast<std::size_t>(b);
}

void check_bins(double lo, double hi, std::size_t n_bins) {
    require(std::isfinite(lo) && std::isfinite(hi) && lo < hi && n_bins >= 1, ErrorKind::invalid_input,
            "histogram range must be finite with lo < hi and at least one bin");
}

} // namespace

Field1D Field1D::delta(const SpaceGrid& grid, double x) {
    grid.validate();
    const auto cell = grid.nearest_cell(x);
    require(cell.has_value(), ErrorKind::invalid_input, "delta position outside the grid");
    Field1D f{grid, std::vector<double>(grid.n_cells, 0.0), std::vector<double>(grid.n_cells, 0.0)};
    f.p_plus[*cell] = 0.5 / grid.dx;
    f.p_minus[*cell] = 0.5 / grid.dx;
    return f;
}

double Field1D::mass() const {
    double sum = 0.0;
    for (std::size_t j = 0; j < p_plus.size(); ++j) sum += p_plus[j] + p_minus[j];
    return sum * grid.dx;
}

std::vector<double> Field1D::total() const {
    std::vector<double> p(p_plus.size());
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = p_plus[j] + p_minus[j];
    return p;
}

void TelegraphParams::validate(const SpaceGrid& grid) const {
    require(std::isfinite(mu) && std::isfinite(v) && std::isfinite(lambda) && std::isfinite(dt),
            ErrorKind::invalid_parameter, "telegraph parameters must be finite");
    require(v > 0.0, ErrorKind::invalid_parameter, "telegraph speed v must be positive");
    require(lambda >= 0.0, ErrorKind::invalid_parameter, "telegraph switching rate must be >= 0");
    require(dt > 0.0, ErrorKind::invalid_parameter, "telegraph time step must be positive");
    const double cfl = (std::abs(mu) + v) * dt / grid.dx;
    require(cfl <= 1.0 + 1e-12, ErrorKind::configuration,
            "CFL condition violated: (|mu| + v) dt / dx = " + std::to_string(cfl) + " > 1");
}

Field1D step_telegraph(const Field1D& field, const TelegraphParams& params) {
    check_field(field);
    params.validate(field.grid);

    Field1D out = field;
    std::vector<double> scratch;
    detail::advect_periodic(out.p_plus, (params.mu + params.v) * params.dt / field.grid.dx, scratch);
    detail::advect_periodic(out.p_minus, (params.mu - params.v) * params.dt / field.grid.dx, scratch);

    const double r = std::exp(-2.0 * params.lambda * params.dt);
    const double stay = 0.5 * (1.0 + r);
    const double swap = -0.5 * std::expm1(-2.0 * params.lambda * params.dt);
    for (std::size_t j = 0; j < out.p_plus.size(); ++j) {
        const double p = out.p_plus[j], m = out.p_minus[j];
        out.p_plus[j] = stay * p + swap * m;
        out.p_minus[j] = stay * m + swap * p;
    }
    return out;
}

Field1D evolve_telegraph(const Field1D& field, const TelegraphParams& params, double t_final,
                         const TelegraphObserver& observer) {
    check_field(field);
    params.validate(field.grid);
    const std::size_t steps = whole_steps(t_final, params.dt);
    Field1D current = field;
    if (observer) observer(0, current);
    for (std::size_t n = 1; n <= steps; ++n) {
        current = step_telegraph(current, params);
        if (observer) observer(n, current);
    }
    return current;
}

Moments telegraph_moments(const Field1D& field) {
    check_field(field);
    const SpaceGrid& g = field.grid;
    double mass = 0.0, first = 0.0;
    for (std::size_t j = 0; j < g.n_cells; ++j) {
        const double p = field.p_plus[j] + field.p_minus[j];
        mass += p;
        first += p * g.x(j);
    }
    require(mass * g.dx > 0.0, ErrorKind::degenerate_input, "field has zero mass");
    const double mean = first / mass;
    double second = 0.0;
    for (std::size_t j = 0; j < g.n_cells; ++j) {
        const double d = g.x(j) - mean;
        second += (field.p_plus[j] + field.p_minus[j]) * d * d;
    }
    return {mass * g.dx, mean, second / mass};
}

Eigen::MatrixXd telegraph_generator_matrix(const TelegraphParams& params, const SpaceGrid& grid) {
    grid.validate();
    require(grid.n_cells <= max_generator_cells, ErrorKind::size_exceeded,
            "generator matrix limited to " + std::to_string(max_generator_cells) + " cells");
    params.validate(grid);

    const auto n = static_cast<Eigen::Index>(grid.n_cells);
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    const auto add_advection = [&](Eigen::Index offset, double speed) {
        const double rate = std::abs(speed) / grid.dx;
        if (rate == 0.0) return;
        for (Eigen::Index j = 0; j < n; ++j) {
            const Eigen::Index upstream = speed > 0.0 ? (j + n - 1) % n : (j + 1) % n;
            g(offset + j, offset + j) -= rate;
            g(offset + j, offset + upstream) += rate;
        }
    };
    add_advection(0, params.mu + params.v);
    add_advection(n, params.mu - params.v);
    for (Eigen::Index j = 0; j < n; ++j) {
        g(j, j) -= params.lambda;
        g(n + j, n + j) -= params.lambda;
        g(j, n + j) += params.lambda;
        g(n + j, j) += params.lambda;
    }
    return g;
}

std::vector<double> bin_field(const Field1D& field, double lo, double hi, std::size_t n_bins) {
    check_field(field);
    check_bins(lo, hi, n_bins);
    const double width = (hi - lo) / static_cast<double>(n_bins);
    std::vector<double> bins(n_bins, 0.0);
    double total = 0.0;
    for (std::size_t j = 0; j < field.grid.n_cells; ++j) {
        const double m = (field.p_plus[j] + field.p_minus[j]) * field.grid.dx;
        total += m;
        const std::size_t b = bin_index(field.grid.x(j), lo, width, n_bins);
        if (b < n_bins) bins[b] += m;
    }
    require(total > 0.0, ErrorKind::degenerate_input, "field has zero mass");
    for (double& b : bins) b /= total;
    return bins;
}

std::vector<double> bin_points(const std::vector<double>& xs, double lo, double hi, std::size_t n_bins) {
    check_bins(lo, hi, n_bins);
    require(!xs.empty(), ErrorKind::insufficient_data, "no points to histogram");
    const double width = (hi - lo) / static_cast<double>(n_bins);
    std::vector<double> bins(n_bins, 0.0);
    for (double x : xs) {
        const std::size_t b = bin_index(x, lo, width, n_bins);
        if (b < n_bins) bins[b] += 1.0;
    }
    for (double& b : bins) b /= static_cast<double>(xs.size());
    return bins;
}

double compare_pde_mc(const TelegraphParams& params, double t_final, std::size_t n_traj,
                      std::uint64_t seed, std::size_t n_bins) {
    require(n_traj >= 10000, ErrorKind::invalid_input, "PDE/MC comparison needs at least 1e4 trajectories");
    require(std::isfinite(t_final) && t_final > 0.0, ErrorKind::invalid_parameter,
            "final time must be positive");
    const double speed = std::abs(params.mu) + params.v;
    const double reach = speed * t_final;

    // dx = speed dt puts the fastest species at Courant number 1; 8 spare cells
    // on each side keep the periodic wrap out of reach.
    SpaceGrid grid;
    grid.dx = speed * params.dt;
    const auto half = static_cast<std::size_t>(std::ceil(reach / grid.dx)) + 8;
    grid.n_cells = 2 * half + 1;
    grid.x0 = -static_cast<double>(half) * grid.dx;
    const Field1D pde = evolve_telegraph(Field1D::delta(grid, 0.0), params, t_final);

    KacParams kac{params.mu, params.v, params.lambda, 0.0, +1};
    const TimeGrid tgrid{0.0, t_final, 1};
    std::vector<double> endpoints(n_traj);
    parallel_for(n_traj, default_threads(), [&](std::size_t i) {
        KacParams p = kac;
        if (i % 2 == 1) p.s_init = -1;
        endpoints[i] = simulate_kac(p, tgrid, seed, i).x.back();
    });

    const double lo = -1.2 * reach, hi = 1.2 * reach;
    const auto p = bin_field(pde, lo, hi, n_bins);
    const auto q = bin_points(endpoints, lo, hi, n_bins);
    double l1 = 0.0;
    for (std::size_t b = 0; b < n_bins; ++b) l1 += std::abs(p[b] - q[b]);
    return l1;
}

} // namespace lgkac
