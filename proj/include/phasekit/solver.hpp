#pragma once

#include <complex>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "phasekit/ratexpr.hpp"

namespace phasekit {

/// One component of the solution set of a polynomial system.
///
/// Unknowns in `free` are unconstrained; every other unknown is given in
/// `values`, as a constant or as an expression in the free unknowns.
struct SolutionFamily {
  std::map<std::string, RatExpr> values;
  std::vector<std::string> free;

  bool is_point() const { return free.empty(); }
  /// Constant values of a point solution, in the order of `unknowns`.
  std::vector<GaussQ> point(const std::vector<std::string>& unknowns) const;
};

struct NumericPoint {
  std::vector<std::complex<double>> values;
};

struct SolveResult {
  std::vector<SolutionFamily> exact;
  /// Points found only numerically (isolated points outside Q(i)).
  std::vector<NumericPoint> numeric;
  /// Set when some factor could be handled neither exactly nor numerically.
  bool incomplete = false;
};

/// Solve eqs = 0 for `unknowns` over Q(i). Every symbol in the equations
/// must be an unknown. Unknowns listed in `nonzero` are required to be
/// nonzero. Each exact family is re-verified by substitution.
///
/// The search splits on common factors of equation pairs and on the leading
/// coefficient of linear equations, takes exact univariate roots, and
/// otherwise eliminates with resultants. Irrational isolated points of
/// one- and two-unknown systems are completed numerically.
SolveResult solve_system(const std::vector<MultiPoly>& eqs, const std::vector<std::string>& unknowns,
                         const std::set<std::string>& nonzero = {});

}  // namespace phasekit
