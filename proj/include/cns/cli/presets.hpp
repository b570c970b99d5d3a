#pragma once

#include <string>
#include <vector>

#include "cns/cli/config.hpp"

namespace cns::cli {

/// smooth-small, patch-2d, rotation-audit, striated-sweep, uniqueness-pair.
const std::vector<std::string>& preset_names();

/// @throws ConfigError naming the preset if it is unknown.
Config preset(const std::string& name);

}  // namespace cns::cli
