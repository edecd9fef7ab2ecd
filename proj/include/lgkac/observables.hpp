#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lgkac/grid.hpp"
#include "lgkac/stochastic_processes.hpp"

namespace lgkac {

/// Dichotomic observable Q(t) in {+1, -1} sampled on a grid, for one trial.
struct BinarySeries {
    TimeGrid grid;
    std::vector<std::int8_t> q;
    std::int64_t trial_id = 0;
};

/// Threshold readout. Samples exactly at the threshold map to +1.
struct ThresholdSpec {
    double v_th = 0.0;
};

/// Spike readout: the bin around grid time t is [t - w/2, t + w/2).
struct SpikeBinSpec {
    double bin_width = 1.0;
};

BinarySeries binarize_threshold(const Trajectory& traj, const ThresholdSpec& spec,
                                std::int64_t trial_id = 0);

/// `spike_times` must be sorted ascending and lie within the grid's time span.
BinarySeries binarize_spikes(std::span<const double> spike_times, const TimeGrid& grid,
                             const SpikeBinSpec& spec, std::int64_t trial_id = 0);

BinarySeries kac_internal_state(const KacTrajectory& traj, std::int64_t trial_id = 0);

/// Kac position read out against a threshold.
BinarySeries kac_position_threshold(const KacTrajectory& traj, const ThresholdSpec& spec,
                                    std::int64_t trial_id = 0);

} // namespace lgkac
