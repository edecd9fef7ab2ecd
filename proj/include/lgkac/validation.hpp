#pragma once

#include <cstdint>

#include "json.hpp"

namespace lgkac {

/// Runs the Monte Carlo and closed-form oracle checks and returns a report
/// {"seed", "quick", "checks": [...], "passed"}. The report holds no timings,
/// so the same seed always produces the same bytes.
nlohmann::json run_validation(std::uint64_t seed, bool quick);

} // namespace lgkac
