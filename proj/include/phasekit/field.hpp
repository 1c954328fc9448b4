#pragma once

#include <map>
#include <string>
#include <vector>

#include "phasekit/ratexpr.hpp"

namespace phasekit {

/// Symbol standing for e^{rate*t}.
struct ExpSymbol {
  std::string name;
  GaussQ rate;

  friend bool operator==(const ExpSymbol& a, const ExpSymbol& b) { return a.name == b.name && a.rate == b.rate; }
};

/// A named system dx_k/dt = f_k with rational right-hand sides.
class VField {
 public:
  VField() = default;
  /// Throws std::invalid_argument on arity mismatch or undeclared symbols.
  VField(std::string name, std::vector<std::string> statevars, std::vector<RatExpr> components,
         std::vector<std::string> params = {}, std::vector<ExpSymbol> expsyms = {});

  const std::string& name() const { return name_; }
  const std::vector<std::string>& statevars() const { return statevars_; }
  const std::vector<RatExpr>& components() const { return components_; }
  const RatExpr& component(std::size_t k) const { return components_.at(k); }
  const std::vector<std::string>& params() const { return params_; }
  const std::vector<ExpSymbol>& expsyms() const { return expsyms_; }
  ExpRates rates() const;
  std::size_t dimension() const { return statevars_.size(); }
  bool is_polynomial() const;

  /// Substitute exact parameter values; bound parameters leave the list.
  VField with_params(const std::map<std::string, GaussQ>& values) const;
  VField renamed(std::string name) const;
  /// Same field with every coefficient conjugated (i -> -i).
  VField conj() const;

  friend bool operator==(const VField& a, const VField& b) {
    return a.statevars_ == b.statevars_ && a.components_ == b.components_;
  }

 private:
  std::string name_;
  std::vector<std::string> statevars_;
  std::vector<RatExpr> components_;
  std::vector<std::string> params_;
  std::vector<ExpSymbol> expsyms_;
};

/// Birational change of coordinates with both directions given explicitly.
///
/// `forward[k]` expresses target variable k in the source variables,
/// `inverse[k]` expresses source variable k in the target variables.
class RationalMap {
 public:
  RationalMap() = default;
  /// Verifies inverse(forward(x)) = x and forward(inverse(X)) = X exactly;
  /// throws std::invalid_argument otherwise.
  RationalMap(std::vector<std::string> source, std::vector<std::string> target, std::vector<RatExpr> forward,
              std::vector<RatExpr> inverse, std::string note = {});

  static RationalMap identity(const std::vector<std::string>& vars);

  const std::vector<std::string>& source() const { return source_; }
  const std::vector<std::string>& target() const { return target_; }
  const std::vector<RatExpr>& forward() const { return forward_; }
  const std::vector<RatExpr>& inverse() const { return inverse_; }
  const std::string& note() const { return note_; }

  RationalMap inverted() const;
  /// This map followed by `next` (next.source() must equal target()).
  RationalMap then(const RationalMap& next) const;
  RationalMap conj() const;
  /// Specialize parameters appearing in the map formulas.
  RationalMap with_params(const std::map<std::string, GaussQ>& values) const;

  std::vector<GaussQ> apply(const std::vector<GaussQ>& point) const;
  std::vector<GaussQ> apply_inverse(const std::vector<GaussQ>& point) const;

 private:
  struct Unchecked {};
  RationalMap(Unchecked, std::vector<std::string> source, std::vector<std::string> target,
              std::vector<RatExpr> forward, std::vector<RatExpr> inverse, std::string note);

  std::vector<std::string> source_;
  std::vector<std::string> target_;
  std::vector<RatExpr> forward_;
  std::vector<RatExpr> inverse_;
  std::string note_;
};

/// A system expressed in a chart together with its boundary divisor.
struct ChartedSystem {
  std::string chart;
  VField field;
  /// Local equation of the boundary (1 when the chart has none).
  MultiPoly boundary;
  /// Least k with boundary^k * component polynomial for every component.
  unsigned pole_order = 0;

  /// Name of the boundary variable; throws NotNormalForm if the boundary
  /// is not a single variable.
  std::string boundary_var() const;
};

/// Time derivatives of the target variables, re-expressed in them.
VField pushforward(const VField& v, const RationalMap& m);

/// Total time derivative of f along v, including exponential-symbol rates.
RatExpr lie_derivative(const VField& v, const RatExpr& f);

RatExpr divergence(const VField& v);

/// Determinant of d(forward)/d(source), in the source variables.
RatExpr jacobian_det(const RationalMap& m);

/// Determinant of a square matrix of rational expressions (cofactor expansion).
RatExpr determinant(const std::vector<std::vector<RatExpr>>& m);

/// Pole order of `v` along `boundary`; throws NotNormalForm when some
/// denominator is not a power of the boundary or the order exceeds 16.
unsigned pole_order(const VField& v, const MultiPoly& boundary);

}  // namespace phasekit
