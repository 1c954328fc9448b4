#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phasekit/charts.hpp"
#include "phasekit/solver.hpp"

namespace phasekit {

/// The three-parameter Lorenz field in sigma, epsilon, b.
VField lorenz_field();

struct ResolutionStep {
  std::string label;
  RationalMap map;
  std::string center;
};

/// Which of the two conjugate weighted-chart points the sequence is centered at.
enum class ResolutionCenter { P4, P5 };

/// Steps 0..5 from the weighted chart (X, Y, Z) to (u, v, w), with sigma,
/// epsilon and b symbolic. The P5 sequence is the complex conjugate of the P4 one.
std::vector<ResolutionStep> resolution_sequence_p4();
std::vector<ResolutionStep> resolution_sequence(ResolutionCenter c);

/// Coefficient of u^power (power < 0) in one component of the final system,
/// further split by monomials in the remaining chart variables.
struct PolePart {
  std::string component;
  int power = 0;
  /// Monomial in the non-boundary chart variables, e.g. "w" or "1".
  std::string monomial;
  /// Polynomial in the parameters.
  MultiPoly coeff;
};

struct ResolutionResult {
  /// Field in the final (u, v, w) chart.
  VField system;
  std::vector<PolePart> poles;
  /// Polynomial parts g1, g2, g3.
  std::vector<MultiPoly> regular;
  bool polynomial() const;
};

/// Push a Lorenz-type field on (x, y, z) through the weighted (1,2,2) chart and
/// the resolution steps. Parameters in `values` are substituted in the field
/// and in the step maps; the others stay symbolic.
ResolutionResult apply_resolution(const VField& v, ResolutionCenter c = ResolutionCenter::P4,
                                  const std::map<std::string, GaussQ>& values = {});

/// The four polynomiality conditions in sigma, epsilon, b, as stated for the
/// P4 resolution.
std::vector<MultiPoly> resolution_conditions();

/// One computed pole coefficient matched against a stated condition:
/// coeff = ratio * condition with ratio a nonzero monomial in the parameters.
struct ConditionMatch {
  std::string component;
  int power = 0;
  std::string monomial;
  MultiPoly coeff;
  MultiPoly condition;
  /// nullopt when coeff is not a monomial multiple of condition.
  std::optional<MultiPoly> ratio;
};

/// Match the four pole coefficients of the symbolic P4 resolution against
/// resolution_conditions(), in order.
std::vector<ConditionMatch> match_conditions(const ResolutionResult& r);

struct ParameterTriple {
  GaussQ sigma, epsilon, b;
};

/// All four conditions vanish exactly at t.
bool check_resolvable(const ParameterTriple& t);

/// Families of (sigma, epsilon, b) on which every condition vanishes,
/// found by a case split over the factors of the conditions. Points lying on
/// a larger family are dropped. Unknowns are named "sigma", "epsilon", "b".
std::vector<SolutionFamily> solve_conditions();

struct GridReport {
  std::size_t points = 0;
  std::size_t resolvable = 0;
  /// Points where check_resolvable and the specialized resolution disagree.
  std::vector<ParameterTriple> mismatches;
};

/// Compare check_resolvable against a full specialized resolution on every
/// triple of the grid. The parallel version distributes grid points over threads.
GridReport grid_check(const std::vector<GaussQ>& sigmas, const std::vector<GaussQ>& epsilons,
                      const std::vector<GaussQ>& bs);
GridReport grid_check_serial(const std::vector<GaussQ>& sigmas, const std::vector<GaussQ>& epsilons,
                             const std::vector<GaussQ>& bs);

}  // namespace phasekit
