#pragma once

#include <span>
#include <string_view>

#include "thermo/cli/config.hpp"

namespace thermo::cli {

struct ShippedConfig {
  std::string_view name;  // file stem under tools/configs
  std::string_view text;
};

/// The configs under tools/configs, embedded at build time, sorted by name.
std::span<const ShippedConfig> shipped_configs();
ExperimentConfig shipped_config(std::string_view name);

}  // namespace thermo::cli
