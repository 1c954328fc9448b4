#pragma once

#include <random>
#include <string>
#include <vector>

#include "phasekit/field.hpp"

namespace phasekit {

/// Coordinate chart given by a birational map from the affine chart U0.
struct Chart {
  std::string name;
  RationalMap map;
  /// Local equation of the boundary divisor in the chart variables.
  MultiPoly boundary;
};

/// U0 (identity) plus U_j inverting the j-th variable, for any dimension.
/// Chart U_j uses coordinates named by upper-casing each variable and
/// appending j, e.g. X1 = 1/x, Y1 = y/x, Z1 = z/x.
std::vector<Chart> standard_atlas(const std::vector<std::string>& vars);

/// Standard atlas of P^3 on (x, y, z): charts U0..U3 with boundaries 1, X1, Y2, Z3.
std::vector<Chart> standard_p3_atlas();

/// Weighted chart T_axis = 1/x_axis, T_k = x_k / x_axis^(w_k / w_axis).
///
/// Throws IncompatibleWeights unless w_axis divides every weight. Default
/// coordinate names are the upper-cased variable names.
Chart weighted_chart(const std::vector<unsigned>& weights, const std::vector<std::string>& vars = {"x", "y", "z"},
                     std::size_t axis = 0, std::vector<std::string> names = {});

/// System in the chart together with its boundary and pole order.
ChartedSystem to_chart(const VField& v, const Chart& chart);

/// Transition map from chart `a` to chart `b` (through U0).
RationalMap transition(const Chart& a, const Chart& b);

/// Spot check: for random rational points of U_a, going through U0 agrees
/// with the direct transition to U_b. Points where a map is undefined are
/// resampled.
bool overlap_consistent(const std::vector<Chart>& atlas, std::mt19937_64& rng, int samples = 5);

}  // namespace phasekit
