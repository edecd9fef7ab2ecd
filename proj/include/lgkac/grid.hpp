#pragma once

#include <cstddef>
#include <optional>

namespace lgkac {

/// Uniform time grid with sample times t0 + k*dt for k in [0, n_steps].
struct TimeGrid {
    double t0 = 0.0;
    double dt = 1.0;
    std::size_t n_steps = 1;

    std::size_t size() const noexcept { return n_steps + 1; }
    double time(std::size_t k) const noexcept { return t0 + static_cast<double>(k) * dt; }
    double t_end() const noexcept { return time(n_steps); }

    /// Grid index whose time equals `t` to within 1e-9 of a step, if any.
    std::optional<std::size_t> index_of(double t) const noexcept;

    void validate() const;

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;
};

/// Periodic cell-centred grid; cell j has centre x0 + j*dx.
struct SpaceGrid {
    double x0 = 0.0;
    double dx = 1.0;
    std::size_t n_cells = 8;

    double x(std::size_t j) const noexcept { return x0 + static_cast<double>(j) * dx; }
    double length() const noexcept { return static_cast<double>(n_cells) * dx; }

    /// Index of the cell whose centre is nearest to `x` (no wrapping).
    std::optional<std::size_t> nearest_cell(double x) const noexcept;

    void validate() const;

    friend bool operator==(const SpaceGrid&, const SpaceGrid&) = default;
};

/// Number of whole steps of size `dt` in `t_final`; throws a configuration
/// error when t_final is not an integer multiple of dt.
std::size_t whole_steps(double t_final, double dt);

} // namespace lgkac
