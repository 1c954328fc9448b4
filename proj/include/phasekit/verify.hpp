#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phasekit/charts.hpp"

namespace phasekit {

/// Lie derivative of f along v (with explicit exponential factors) is exactly 0.
bool verify_first_integral(const VField& v, const RatExpr& f);

enum class ReductionKind { ThirdOrder21, InceVIII31, Reduced41, ChangeOfVars41 };

std::string to_string(ReductionKind k);
/// Accepts third_order_21, ince_viii_31, reduced_41, change_of_vars_41.
ReductionKind reduction_from_string(const std::string& s);

/// Check one of the displayed reductions as an exact identity. `perturb` is
/// added to one coefficient of the expected result (a control that must
/// fail). Returns true or throws IdentityFailed with the residual.
bool verify_reduction(ReductionKind kind, const GaussQ& perturb = GaussQ(0));

struct AtlasSpec {
  std::string name;
  VField base;
  /// Charts other than the base chart U0.
  std::vector<Chart> charts;
  std::vector<bool> volume_preserving;

  AtlasSpec with_params(const std::map<std::string, GaussQ>& values) const;
};

/// Chart x1 = 1/x, y1 = A(x) y + B(x, z), z1 = z - C(x), with the inverse
/// computed from that triangular shape. Expressions are in the source variables.
Chart triangular_chart(const std::string& name, const std::vector<std::string>& source,
                       const std::vector<std::string>& target, const std::vector<RatExpr>& forward);

AtlasSpec theorem31_atlas();
/// The second chart uses the conjugate-symmetric reading of its displayed formula.
AtlasSpec theorem41_atlas();
AtlasSpec prop62_atlas();

struct ChartCheck {
  std::string chart;
  bool polynomial = false;
  /// Components that still have a chart variable in the denominator.
  std::vector<std::string> residual_poles;
  RatExpr jacobian;
  bool volume_claimed = false;
  bool volume_ok = true;
  VField transformed;
};

struct AtlasReport {
  std::string atlas;
  std::vector<ChartCheck> charts;
  bool ok() const;
};

AtlasReport verify_atlas(const AtlasSpec& a);

/// Quadratic ansatz: component k is sum_j c[10k + j] m_j with monomials
/// 1, x, y, z, x^2, xy, xz, y^2, yz, z^2 in the base variables.
constexpr std::size_t kAnsatzSize = 30;
VField ansatz_field(const std::vector<GaussQ>& coeffs, const std::vector<std::string>& vars = {"x", "y", "z"});

struct UniquenessResult {
  std::size_t unknowns = kAnsatzSize;
  std::size_t constraints = 0;
  std::size_t rank = 0;
  std::vector<std::vector<GaussQ>> nullspace;
  /// For a one-dimensional solution space: the basis vector scaled so the y
  /// coefficient of the first component is 1 (or the first nonzero entry).
  std::optional<VField> normalized;
};

/// Linear conditions on the 30 ansatz coefficients making every chart
/// transform polynomial. Charts must have no symbolic parameters left.
/// The parallel version assembles the 30 basis transforms concurrently.
UniquenessResult uniqueness_search(const AtlasSpec& a);
UniquenessResult uniqueness_search_serial(const AtlasSpec& a);

}  // namespace phasekit
