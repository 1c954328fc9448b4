#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "phasekit/numeric.hpp"
#include "phasekit/painleve.hpp"
#include "phasekit/resolve.hpp"
#include "phasekit/singular.hpp"
#include "phasekit/sysdef.hpp"
#include "phasekit/verify.hpp"

namespace phasekit::report {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

/// {"exact": true, "value": "a/b+c/d*i"}
json exact(const GaussQ& g);
/// {"exact": false, "value": "<15 significant digits>"}
json numeric(const cplx& z);
json exact_vector(const std::vector<GaussQ>& v);
json numeric_vector(const std::vector<cplx>& v);

/// Top-level object with schema version, command, system name and seed.
json envelope(const std::string& command, const std::string& system, std::uint64_t seed);

/// Parse "k=v,k=v" with exact values.
std::map<std::string, GaussQ> parse_params(const std::string& text);
/// Parse "a,b,c" with exact values.
std::vector<GaussQ> parse_point(const std::string& text);
std::vector<cplx> parse_numeric_point(const std::string& text);

/// Named chart: "U0".."Un" from the standard atlas, or "W(w1,w2,...)".
Chart chart_by_name(const std::string& name, const std::vector<std::string>& vars);
std::vector<Chart> charts_for(const VField& v, const std::string& which, std::vector<std::string>& notes);

json singularities_section(const VField& v, const std::vector<Chart>& charts, std::vector<std::string>& notes);
json index_section(const ChartedSystem& cs, const std::vector<GaussQ>& point);
json balances_section(const std::vector<Balance>& bals);
/// Only meaningful for the Lorenz family; `values` are the bound parameters.
json resolution_section(const std::map<std::string, GaussQ>& values, std::vector<std::string>& failures);
json integrals_section(const SystemDoc& doc, const std::map<std::string, GaussQ>& values,
                       std::vector<std::string>& failures);
json reductions_section(std::vector<std::string>& failures);
json atlas_section(const AtlasReport& r, std::vector<std::string>& failures);
json uniqueness_section(const UniquenessResult& r, const VField& expected, std::vector<std::string>& failures);
json trajectory_section(const SystemDoc& doc, const VField& v, const Trajectory& tr);

/// Atlas by name: theorem31, theorem41, prop62.
AtlasSpec atlas_by_name(const std::string& name);

struct AnalyzeOptions {
  std::string charts = "all";
  std::map<std::string, GaussQ> params;
  bool skip_numeric = false;
  std::uint64_t seed = 0;
};

/// Full pipeline report; report-level failures are listed under "failures".
json analyze(const SystemDoc& doc, const AnalyzeOptions& opt);

}  // namespace phasekit::report
