#pragma once

#include <iosfwd>

#include <json.hpp>

#include "helix/cli/config.hpp"

namespace helix::cli {

/// Exit codes of the command-line tool.
inline constexpr int exit_ok = 0;
inline constexpr int exit_check_failed = 1;
inline constexpr int exit_usage = 2;

nlohmann::json model_json(const WaveModel& m);

/// Executes the configured scenario, writing artifacts under config.output.
/// Returns exit_ok or exit_check_failed; throws ConfigError on usage problems.
int run(const RunConfig& config, std::ostream& out);

}  // namespace helix::cli
