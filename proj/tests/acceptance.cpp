#include <cstdio>
#include <cstdlib>
#include <string>

#include "phasekit/acceptance.hpp"

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2024;
  int failed = 0;
  for (const auto& r : phasekit::run_acceptance(seed)) {
    std::printf("%s %2d %-22s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
    failed += !r.pass;
  }
  std::printf("%d/11 criteria passed\n", 11 - failed);
  return failed == 0 ? 0 : 1;
}
