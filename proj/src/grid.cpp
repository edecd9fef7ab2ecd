#include "lgkac/grid.hpp"

#include <cmath>
#include <string>

#include "lgkac/error.hpp"

namespace lgkac {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid_parameter";
    case ErrorKind::invalid_input: return "invalid_input";
    case ErrorKind::insufficient_data: return "insufficient_data";
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::degenerate_input: return "degenerate_input";
    case ErrorKind::size_exceeded: return "size_exceeded";
    case ErrorKind::parse_error: return "parse_error";
    case ErrorKind::io_error: return "io_error";
    }
    return "unknown";
}

std::optional<std::size_t> TimeGrid::index_of(double t) const noexcept {
    if (!std::isfinite(t)) return std::nullopt;
    const double k = std::round((t - t0) / dt);
    if (k < 0.0 || k > static_cast<double>(n_steps)) return std::nullopt;
    if (std::abs(t - time(static_cast<std::size_t>(k))) > 1e-9 * dt) return std::nullopt;
    return static_cast<std::size_t>(k);
}

void TimeGrid::validate() const {
    require(std::isfinite(t0), ErrorKind::invalid_parameter, "time grid origin must be finite");
    require(std::isfinite(dt) && dt > 0.0, ErrorKind::invalid_parameter,
            "time grid step must be positive and finite");
    require(n_steps >= 1, ErrorKind::invalid_parameter, "time grid needs at least one step");
}

std::optional<std::size_t> SpaceGrid::nearest_cell(double xv) const noexcept {
    const double j = std::round((xv - x0) / dx);
    if (!std::isfinite(j) || j < 0.0 || j >= static_cast<double>(n_cells)) return std::nullopt;
    return static_cast<std::size_t>(j);
}

void SpaceGrid::validate() const {
    require(std::isfinite(x0), ErrorKind::invalid_parameter, "space grid origin must be finite");
    require(std::isfinite(dx) && dx > 0.0, ErrorKind::invalid_parameter,
            "space grid spacing must be positive and finite");
    require(n_cells >= 8, ErrorKind::invalid_parameter, "space grid needs at least 8 cells");
}

std::size_t whole_steps(double t_final, double dt) {
    require(std::isfinite(t_final) && t_final >= 0.0, ErrorKind::configuration,
            "final time must be finite and nonnegative");
    require(std::isfinite(dt) && dt > 0.0, ErrorKind::configuration, "time step must be positive");
    const double n = std::round(t_final / dt);
    require(std::abs(n * dt - t_final) <= 1e-9 * std::max(1.0, t_final), ErrorKind::configuration,
            "final time " + std::to_string(t_final) + " is not a multiple of dt " +
                std::to_string(dt));
    return static_cast<std::size_t>(n);
}

} // namespace lgkac
