#pragma once

#include <string>

#include "doctest.h"
#include "phasekit/sysdef.hpp"

#ifndef PHASEKIT_DATA_DIR
#define PHASEKIT_DATA_DIR "data"
#endif

inline phasekit::SystemDoc load_system(const std::string& name) {
  return phasekit::parse_system_file(std::string(PHASEKIT_DATA_DIR) + "/" + name);
}

inline phasekit::RatExpr R(const std::string& s) { return phasekit::parse_expression(s); }

inline phasekit::MultiPoly P(const std::string& s) {
  phasekit::RatExpr e = phasekit::parse_expression(s);
  REQUIRE(e.is_polynomial());
  return e.num() * e.den().constant_term().inverse();
}
