#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace phasekit {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Run the end-to-end acceptance checks on the bundled systems. Random
/// specializations are drawn from `seed`.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 2024);

}  // namespace phasekit
