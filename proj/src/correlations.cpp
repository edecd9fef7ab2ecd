#include "lgkac/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lgkac/error.hpp"

namespace lgkac {

double ProductMoments::sample_std() const noexcept {
    if (count < 2) return 0.0;
    const double n = static_cast<double>(count);
    const double var = (sum_sq - sum * sum / n) / (n - 1.0);
    return var > 0.0 ? std::sqrt(var) : 0.0;
}

std::string_view to_string(Verdict verdict) {
    switch (verdict) {
    case Verdict::non_violating: return "non-violating";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::violating: return "violating";
    }
    return "unknown";
}

Verdict classify(double k, double k_std_error) {
    if (k <= 1.0) return Verdict::non_violating;
    if (k > 1.0 + 3.0 * k_std_error) return Verdict::violating;
    return Verdict::inconclusive;
}

CorrelationEstimate correlate_ensemble(std::span<const BinarySeries> series_set, std::size_t i,
                                       std::size_t j) {
    require(series_set.size() >= 2, ErrorKind::insufficient_data,
            "ensemble correlation needs at least 2 trials");
    const TimeGrid& grid = series_set.front().grid;
    require(i < grid.size() && j < grid.size(), ErrorKind::invalid_input,
            "correlation indices outside the grid");
    ProductMoments moments;
    for (const BinarySeries& s : series_set) {
        require(s.grid == grid && s.q.size() == grid.size(), ErrorKind::invalid_input,
                "trial " + std::to_string(s.trial_id) + " is on a different grid");
        moments.add(static_cast<double>(s.q[i] * s.q[j]));
    }
    return {moments.mean(), moments.sample_std() / std::sqrt(static_cast<double>(moments.count)),
            moments.count};
}

StationaryEstimate correlate_stationary(const BinarySeries& series, std::size_t lag_steps,
                                        std::size_t burn_in_steps,
                                        std::optional<double> decorrelation_rate) {
    require(series.q.size() > burn_in_steps + lag_steps + 1, ErrorKind::insufficient_data,
            "series too short for burn-in " + std::to_string(burn_in_steps) + " and lag " +
                std::to_string(lag_steps));
    ProductMoments moments;
    for (std::size_t k = burn_in_steps; k + lag_steps < series.q.size(); ++k)
        moments.add(static_cast<double>(series.q[k] * series.q[k + lag_steps]));

    const double n = static_cast<double>(moments.count);
    StationaryEstimate out;
    out.n_effective = n;
    if (decorrelation_rate) {
        require(std::isfinite(*decorrelation_rate) && *decorrelation_rate > 0.0,
                ErrorKind::invalid_parameter, "decorrelation rate must be positive");
        out.n_effective = std::clamp(n * series.grid.dt * *decorrelation_rate, 1.0, n);
        out.optimistic_error = false;
    }
    out.estimate = {moments.mean(), moments.sample_std() / std::sqrt(out.n_effective), moments.count};
    return out;
}

double lg_statistic(double c12, double c23, double c13) {
    constexpr double slack = 1e-12;
    for (double c : {c12, c23, c13})
        require(std::isfinite(c) && std::abs(c) <= 1.0 + slack, ErrorKind::invalid_input,
                "two-time correlations must lie in [-1, 1]");
    return c12 + c23 - c13;
}

int realization_lg_value(const BinarySeries& series, std::size_t i1, std::size_t i2, std::size_t i3) {
    const int q1 = series.q.at(i1), q2 = series.q.at(i2), q3 = series.q.at(i3);
    return q1 * q2 + q2 * q3 - q1 * q3;
}

LGResult lg_from_trials(std::span<const BinarySeries> series_set, double t1, double t2, double t3) {
    require(!series_set.empty(), ErrorKind::insufficient_data, "no trials supplied");
    require(t1 < t2 && t2 < t3, ErrorKind::invalid_input, "measurement times must satisfy t1 < t2 < t3");
    const TimeGrid& grid = series_set.front().grid;
    const auto index = [&grid](double t) {
        const auto k = grid.index_of(t);
        require(k.has_value(), ErrorKind::invalid_input,
                "measurement time " + std::to_string(t) + " is not a grid point");
        return *k;
    };
    const std::size_t i1 = index(t1), i2 = index(t2), i3 = index(t3);

    LGResult r;
    r.t1 = t1;
    r.t2 = t2;
    r.t3 = t3;
    r.c12 = correlate_ensemble(series_set, i1, i2);
    r.c23 = correlate_ensemble(series_set, i2, i3);
    r.c13 = correlate_ensemble(series_set, i1, i3);
    r.k = lg_statistic(r.c12.value, r.c23.value, r.c13.value);
    r.k_std_error = std::sqrt(r.c12.std_error * r.c12.std_error + r.c23.std_error * r.c23.std_error +
                              r.c13.std_error * r.c13.std_error);
    r.verdict = classify(r.k, r.k_std_error);
    return r;
}

std::vector<ScanPoint> lg_scan_stationary(const BinarySeries& series,
                                          std::span<const std::size_t> tau_steps,
                                          std::size_t burn_in_steps,
                                          std::optional<double> decorrelation_rate) {
    std::vector<ScanPoint> out;
    out.reserve(tau_steps.size());
    for (std::size_t lag : tau_steps) {
        const auto c1 = correlate_stationary(series, lag, burn_in_steps, decorrelation_rate).estimate;
        const auto c2 = correlate_stationary(series, 2 * lag, burn_in_steps, decorrelation_rate).estimate;
        out.push_back({static_cast<double>(lag) * series.grid.dt, 2.0 * c1.value - c2.value,
                       std::sqrt(4.0 * c1.std_error * c1.std_error + c2.std_error * c2.std_error)});
    }
    return out;
}

} // namespace lgkac
