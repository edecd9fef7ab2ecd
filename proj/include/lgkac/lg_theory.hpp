#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace lgkac {

struct LGBound {
    int k_max = 0;
    int k_min = 0;
};

/// Correlations C(dt) = cos(omega dt) exp(-gamma |dt|), normalised so C(0) = 1.
struct OscillatoryModel {
    double omega = 0.0;  // rad/s
    double gamma = 0.0;  // 1/s

    void validate() const;
};

/// Where K(tau) exceeds 1 on a scanned range. Interval endpoints are K = 1
/// crossings, except an interval that starts or ends at the range boundary.
struct ViolationReport {
    double tau_star = 0.0;
    double k_max = 0.0;
    std::vector<std::pair<double, double>> violating_intervals;
};

/// Max and min of q1 q2 + q2 q3 - q1 q3 over all eight assignments in {+1,-1}^3.
LGBound enumerate_lg_bound();

/// Equally spaced K for exponential correlations: 2 e^{-g t} - e^{-2 g t}.
double k_exponential(double gamma, double tau);

/// 2 cos(w t) e^{-g t} - cos(2 w t) e^{-2 g t}.
double k_damped_oscillatory(const OscillatoryModel& model, double tau);

/// Undamped K written as 1 + 2 cos(theta) (1 - cos(theta)), theta = omega tau.
double k_undamped_identity(double theta);

/// Dense scan of K over [lo, hi] with `grid_points` samples, then bisection of
/// each K = 1 crossing to 1e-10 and Brent refinement of the maximum.
ViolationReport violation_region(const OscillatoryModel& model, std::pair<double, double> tau_range,
                                 std::size_t grid_points);

} // namespace lgkac
