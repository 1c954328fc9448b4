#pragma once

#include <string>
#include <vector>

#include "phasekit/sysdef.hpp"

namespace phasekit {

/// Names of the bundled systems: lorenz, system21, m21, system31, system41, system51, xy41.
std::vector<std::string> builtin_names();
/// Source text of a bundled system; throws std::out_of_range for unknown names.
const std::string& builtin_text(const std::string& name);
SystemDoc builtin_system(const std::string& name);

}  // namespace phasekit
