#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lgkac/observables.hpp"

namespace lgkac {

struct CorrelationEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
};

/// Running (count, sum, sum of squares); merge is associative and
/// commutative so partitions of trials can be folded independently.
struct ProductMoments {
    std::size_t count = 0;
    double sum = 0.0;
    double sum_sq = 0.0;

    void add(double x) noexcept {
        ++count;
        sum += x;
        sum_sq += x * x;
    }
    void merge(const ProductMoments& other) noexcept {
        count += other.count;
        sum += other.sum;
        sum_sq += other.sum_sq;
    }
    double mean() const noexcept { return sum / static_cast<double>(count); }
    /// Unbiased sample standard deviation (0 for fewer than two samples).
    double sample_std() const noexcept;
};

enum class Verdict { non_violating, inconclusive, violating };

std::string_view to_string(Verdict verdict);

/// Non-violating when K <= 1, violating when K > 1 + 3 SE, else inconclusive.
Verdict classify(double k, double k_std_error);

/// C_12, C_23, C_13 and K = C_12 + C_23 - C_13. The three errors are combined
/// in quadrature as if independent, although they share trials.
struct LGResult {
    CorrelationEstimate c12, c23, c13;
    double k = 0.0;
    double k_std_error = 0.0;
    double t1 = 0.0, t2 = 0.0, t3 = 0.0;
    Verdict verdict = Verdict::non_violating;
};

/// Stationary estimate plus how its error bar was formed.
struct StationaryEstimate {
    CorrelationEstimate estimate;
    double n_effective = 0.0;
    /// True when no decorrelation rate was supplied, so the error treats
    /// every lagged pair as independent.
    bool optimistic_error = true;
};

struct ScanPoint {
    double tau = 0.0;
    double k = 0.0;
    double std_error = 0.0;
};

/// Mean over trials of q_i q_j.
CorrelationEstimate correlate_ensemble(std::span<const BinarySeries> series_set, std::size_t i,
                                       std::size_t j);

/// Time average of q_k q_{k+lag} over k >= burn_in_steps. With a
/// decorrelation rate r the error uses N_eff = min(N, N dt r).
StationaryEstimate correlate_stationary(const BinarySeries& series, std::size_t lag_steps,
                                        std::size_t burn_in_steps,
                                        std::optional<double> decorrelation_rate = std::nullopt);

/// c12 + c23 - c13; each input must lie in [-1, 1].
double lg_statistic(double c12, double c23, double c13);

/// Single-realisation combination q1 q2 + q2 q3 - q1 q3, always <= 1.
int realization_lg_value(const BinarySeries& series, std::size_t i1, std::size_t i2, std::size_t i3);

/// Measurement times must be grid points and satisfy t1 < t2 < t3.
LGResult lg_from_trials(std::span<const BinarySeries> series_set, double t1, double t2, double t3);

/// K(tau) = 2 C(tau) - C(2 tau) from stationary estimates, for each lag.
std::vector<ScanPoint> lg_scan_stationary(const BinarySeries& series,
                                          std::span<const std::size_t> tau_steps,
                                          std::size_t burn_in_steps,
                                          std::optional<double> decorrelation_rate = std::nullopt);

} // namespace lgkac
