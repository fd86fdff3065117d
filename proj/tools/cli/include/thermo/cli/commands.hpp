#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "thermo/cli/config.hpp"

namespace thermo::cli {

inline constexpr std::string_view kToolName = "thermo";
std::string_view tool_version() noexcept;

struct CommandOutput {
  nlohmann::json results;
  std::string csv;  // "point_id,n,k,value" rows; empty for commands without a grid
};

CommandOutput cmd_pressure(const ExperimentConfig& config, unsigned threads = 1);
CommandOutput cmd_equilibrium(const ExperimentConfig& config, unsigned threads = 1);
CommandOutput cmd_local_pressure(const ExperimentConfig& config, unsigned threads = 1);
CommandOutput cmd_gibbs_check(const ExperimentConfig& config, unsigned threads = 1);

nlohmann::json make_envelope(std::string_view command, const ExperimentConfig& config,
                             const nlohmann::json& results, double wall_time_seconds);

/// Full command-line entry point. Exit status: 0 success, 1 selftest failure,
/// 2 config or usage error, 3 mathematical precondition failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace thermo::cli
