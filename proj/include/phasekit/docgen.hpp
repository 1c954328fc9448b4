#pragma once

#include <random>
#include <string>
#include <vector>

namespace phasekit {

/// Random expression text over `syms`, using every operator of the grammar.
std::string random_expression_text(std::mt19937_64& rng, const std::vector<std::string>& syms, int depth);

/// Random system document text named g<n>: 1-3 variables, up to two
/// parameters, optionally an exponential symbol and an integral.
std::string random_document_text(std::mt19937_64& rng, int n);

}  // namespace phasekit
