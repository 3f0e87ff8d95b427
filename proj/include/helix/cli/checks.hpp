#pragma once

#include <string>
#include <vector>

#include "helix/cli/report.hpp"

namespace helix::cli {

/// Names of the built-in natural-units verification checks, in run order.
std::vector<std::string> available_checks();

/// Runs the named checks (all when `names` is empty). Tolerances are
/// multiplied by `tolerance_scale`; unknown names raise ConfigError.
VerificationReport run_checks(const std::vector<std::string>& names, double tolerance_scale);

}  // namespace helix::cli
