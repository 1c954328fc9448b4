#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "phasekit/charts.hpp"
#include "phasekit/solver.hpp"

namespace phasekit {

/// Numerators of a charted system in log-pole normal form
/// dx1/dt = a1, dxi/dt = ai/x1 with x1 the boundary coordinate.
struct BoundaryForm {
  std::string boundary;
  /// Chart coordinates with the boundary coordinate moved to the front.
  std::vector<std::string> coords;
  /// a1, a2, ..., an in `coords` order.
  std::vector<MultiPoly> a;
};

/// Throws NotNormalForm unless the pole order is exactly 1, the boundary is
/// a coordinate and the boundary component is polynomial.
BoundaryForm boundary_form(const ChartedSystem& cs);

struct AccessibleSingularity {
  std::string chart;
  /// Chart coordinates, in the chart's own order.
  std::vector<std::string> coords;
  bool exact = true;
  std::vector<GaussQ> point;
  std::vector<std::complex<double>> numeric_point;
  /// Least vanishing order of the boundary-restricted numerators a2..an.
  unsigned vanishing_order = 0;
  /// Lies on a positive-dimensional component of the accessible locus.
  bool on_curve = false;
};

/// Positive-dimensional component of the accessible locus inside a chart.
struct AccessibleCurve {
  std::string chart;
  std::vector<std::string> coords;
  SolutionFamily family;
  std::string str() const;
};

struct AccessibleLocus {
  std::vector<AccessibleSingularity> points;
  std::vector<AccessibleCurve> curves;
};

/// Common zeros of a2..an on the boundary. Curves are reported separately;
/// on a curve, the isolated zeros of the numerators with the curve factored
/// out and the chart origin are reported as distinguished points. A chart
/// with pole order 0 has no accessible singularities.
AccessibleLocus find_accessible_singularities(const ChartedSystem& cs);

/// Throws PositiveDimensionalLocus if the locus contains a curve.
std::vector<AccessibleSingularity> isolated_points(const AccessibleLocus& locus);

struct LocalIndexResult {
  bool exact = true;
  std::vector<GaussQ> eigenvalues;
  std::vector<std::complex<double>> numeric_eigenvalues;
  /// Jacobian of (x1*a1, a2, ..., an) at the point, boundary coordinate first.
  /// Entries of the first column below the diagonal may keep parameters.
  std::vector<std::vector<MultiPoly>> linearization;

  std::size_t size() const { return exact ? eigenvalues.size() : numeric_eigenvalues.size(); }
  /// (1, a2/a1, ...) when a1 is nonzero and the index is exact.
  std::optional<std::vector<GaussQ>> ratios() const;
  std::string str() const;
};

LocalIndexResult local_index(const ChartedSystem& cs, const std::vector<GaussQ>& point);
LocalIndexResult local_index(const ChartedSystem& cs, const AccessibleSingularity& p);
/// Index with given eigenvalues (no linearization); for tests and reports.
LocalIndexResult index_from_eigenvalues(std::vector<GaussQ> eigenvalues);

struct Resonances {
  bool applicable = false;
  std::vector<long> values;
  std::string reason;
};

Resonances resonances(const LocalIndexResult& r);

enum class IndexClass { VerticalOnly, BlowupResolvable, MixedSign };

IndexClass classify(const LocalIndexResult& r);
std::string to_string(IndexClass c);

/// Point of P^n as homogeneous coordinates [z0 : z1 : ... : zn] normalized so
/// the first nonzero entry is 1; nullopt when the chart image is degenerate.
std::optional<std::vector<GaussQ>> projective_image(const Chart& chart, const std::vector<GaussQ>& point);

struct CensusEntry {
  std::string label;
  std::vector<GaussQ> projective;
  /// (chart name, point in chart coordinates) for every chart where it was found.
  std::vector<AccessibleSingularity> appearances;
};

struct SingularityCensus {
  std::vector<CensusEntry> points;
  /// Points with degenerate projective image (e.g. weighted-chart origins).
  std::vector<AccessibleSingularity> exceptional;
  std::vector<AccessibleCurve> curves;
  std::vector<AccessibleSingularity> numeric;
};

/// Accessible singularities of `v` over all charts, deduplicated by their
/// image in projective space and labeled P1, P2, ...: chart origins first in
/// chart order, then the other points by chart and descending (re, im).
SingularityCensus singularity_census(const VField& v, const std::vector<Chart>& charts);

}  // namespace phasekit
