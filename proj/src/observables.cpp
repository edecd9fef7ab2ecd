#include "lgkac/observables.hpp"

#include <algorithm>
#include <cmath>

#include "lgkac/error.hpp"

namespace lgkac {

namespace {

std::vector<std::int8_t> threshold_values(std::span<const double> values, double v_th) {
    require(std::isfinite(v_th), ErrorKind::invalid_parameter, "threshold must be finite");
    std::vector<std::int8_t> q(values.size());
    std::transform(values.begin(), values.end(), q.begin(),
                   [v_th](double v) -> std::int8_t { return v >= v_th ? 1 : -1; });
    return q;
}

} // namespace

BinarySeries binarize_threshold(const Trajectory& traj, const ThresholdSpec& spec,
                                std::int64_t trial_id) {
    require(traj.values.size() == traj.grid.size(), ErrorKind::invalid_input,
            "trajectory length does not match its grid");
    require(std::all_of(traj.values.begin(), traj.values.end(), [](double v) { return std::isfinite(v); }),
            ErrorKind::invalid_input, "trajectory contains non-finite values");
    return {traj.grid, threshold_values(traj.values, spec.v_th), trial_id};
}

BinarySeries binarize_spikes(std::span<const double> spike_times, const TimeGrid& grid,
                             const SpikeBinSpec& spec, std::int64_t trial_id) {
    grid.validate();
    require(std::isfinite(spec.bin_width) && spec.bin_width > 0.0, ErrorKind::invalid_parameter,
            "spike bin width must be positive");
    const double ratio = spec.bin_width / grid.dt;
    require(std::abs(ratio - std::round(ratio)) <= 1e-9 * std::max(1.0, ratio),
            ErrorKind::invalid_parameter, "spike bin width must be an integer multiple of dt");
    require(std::is_sorted(spike_times.begin(), spike_times.end()), ErrorKind::invalid_input,
            "spike times must be sorted ascending");

    const double half = 0.5 * spec.bin_width;
    const double slack = 1e-9 * grid.dt;
    BinarySeries out{grid, std::vector<std::int8_t>(grid.size(), -1), trial_id};
    for (double s : spike_times) {
        require(std::isfinite(s) && s >= grid.t0 - slack && s <= grid.t_end() + slack,
                ErrorKind::invalid_input, "spike time outside the grid's time span");
        // Candidate range from floating division, then the half-open bin test
        // is applied exactly to each candidate.
        const auto lo = static_cast<long long>(std::floor((s - half - grid.t0) / grid.dt)) - 1;
        const auto hi = static_cast<long long>(std::ceil((s + half - grid.t0) / grid.dt)) + 1;
        for (long long k = std::max(0LL, lo); k <= hi && k < static_cast<long long>(grid.size()); ++k) {
            const double t = grid.time(static_cast<std::size_t>(k));
            if (t - half <= s && s < t + half) out.q[static_cast<std::size_t>(k)] = 1;
        }
    }
    return out;
}

BinarySeries kac_internal_state(const KacTrajectory& traj, std::int64_t trial_id) {
    require(traj.s.size() == traj.grid.size(), ErrorKind::invalid_input,
            "Kac trajectory length does not match its grid");
    require(std::all_of(traj.s.begin(), traj.s.end(), [](std::int8_t s) { return s == 1 || s == -1; }),
            ErrorKind::invalid_input, "Kac internal state must be +1 or -1");
    return {traj.grid, traj.s, trial_id};
}

BinarySeries kac_position_threshold(const KacTrajectory& traj, const ThresholdSpec& spec,
                                    std::int64_t trial_id) {
    require(traj.x.size() == traj.grid.size(), ErrorKind::invalid_input,
            "Kac trajectory length does not match its grid");
    return {traj.grid, threshold_values(traj.x, spec.v_th), trial_id};
}

} // namespace lgkac
