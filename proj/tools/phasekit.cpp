#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "phasekit/acceptance.hpp"
#include "phasekit/builtin.hpp"
#include "phasekit/report.hpp"

using namespace phasekit;
using report::json;

namespace {

constexpr int kExitParse = 1;
constexpr int kExitInternal = 2;
constexpr int kExitStrict = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string file;
  std::string json_path;
  std::string params;
  std::uint64_t seed = 0;
  bool strict = false;
};

void add_common(CLI::App* sub, Common& c, bool needs_file = true) {
  if (needs_file) sub->add_option("file", c.file, "System file, or the name of a bundled system")->required();
  sub->add_option("--json", c.json_path, "Write the JSON report to this path ('-' for stdout)");
  sub->add_option("--params", c.params, "Parameter values k=v,...");
  sub->add_option("--seed", c.seed, "Seed recorded in the report and used for random choices");
  sub->add_flag("--strict", c.strict, "Exit nonzero when the report lists failures");
}

SystemDoc load(const std::string& file) {
  if (!std::filesystem::exists(file)) {
    const auto names = builtin_names();
    if (std::find(names.begin(), names.end(), file) != names.end()) return builtin_system(file);
  }
  std::ifstream in(file);
  if (!in) throw InputError("cannot read " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_system(ss.str());
}

bool is_value(const json& j) { return j.is_object() && j.size() == 2 && j.contains("exact") && j.contains("value"); }

std::string scalar(const json& j) {
  if (is_value(j)) {
    return j["value"].get<std::string>() + (j["exact"].get<bool>() ? "" : " (numeric)");
  }
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool is_flat(const json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j) {
    if (!(e.is_primitive() || is_value(e))) return false;
  }
  return true;
}

void render(std::ostream& out, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = j.is_object() ? it.key() : "-";
    const json& v = it.value();
    if (v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), 
                                                    [](const json& e) {
                                                      return e.is_string() &&
                                                             e.get<std::string>().find(' ') != std::string::npos;
                                                    })) {
      out << pad << key << ":\n";
      for (const auto& e : v) out << pad << "  - " << e.get<std::string>() << "\n";
    } else if (is_flat(v)) {
      out << pad << key << ": (";
      for (std::size_t k = 0; k < v.size(); ++k) out << (k ? ", " : "") << scalar(v[k]);
      out << ")\n";
    } else if (v.is_structured() && !is_value(v)) {
      if (v.empty()) {
        out << pad << key << ": none\n";
        continue;
      }
      out << pad << key << ":\n";
      render(out, v, indent + 2);
    } else {
      out << pad << key << ": " << scalar(v) << "\n";
    }
  }
}

int emit(const json& doc, const Common& c) {
  const std::string text = doc.dump(2) + "\n";
  if (c.json_path == "-") {
    std::cout << text;
  } else {
    if (!c.json_path.empty()) {
      std::ofstream out(c.json_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + c.json_path);
      out << text;
    }
    render(std::cout, doc, 0);
  }
  const bool failed = doc.contains("failures") && !doc["failures"].empty();
  return c.strict && failed ? kExitStrict : 0;
}

void check_params(const SystemDoc& doc, const std::map<std::string, GaussQ>& values) {
  for (const auto& [k, g] : values) {
    if (std::find(doc.params.begin(), doc.params.end(), k) == doc.params.end()) {
      throw std::invalid_argument("unknown parameter " + k);
    }
  }
}

json with_failures(json j, const std::vector<std::string>& failures) {
  j["failures"] = failures;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Singularity analysis, resolution checks and numerics for polynomial vector fields"};
  app.require_subcommand(0, 1);
  bool suite = false;
  std::uint64_t suite_seed = 2024;
  app.add_flag("--paper-suite", suite, "Run every acceptance check and print one line per check");
  app.add_option("--suite-seed", suite_seed, "Seed for the acceptance checks");

  Common c;
  std::string charts = "all", chart, point, atlas, x0 = "1,0,0", traj;
  bool skip_numeric = false, reductions = false;
  double t_end = 10, step = 1e-3;
  std::size_t sample = 1;

  auto* analyze = app.add_subcommand("analyze", "Full pipeline report");
  add_common(analyze, c);
  analyze->add_option("--charts", charts, "standard, weighted or all")
      ->check(CLI::IsMember({"standard", "weighted", "all"}));
  analyze->add_flag("--skip-numeric", skip_numeric, "Skip numeric cross-checks");

  auto* painleve = app.add_subcommand("painleve", "Dominant balances");
  add_common(painleve, c);

  auto* index = app.add_subcommand("index", "Local index at a point of a chart");
  add_common(index, c);
  index->add_option("--chart", chart, "U0..Un or W(w1,...)")->required();
  index->add_option("--point", point, "Chart coordinates a,b,c")->required();

  auto* resolve = app.add_subcommand("resolve", "Resolution of the weighted-chart singularity");
  add_common(resolve, c);

  auto* integrals = app.add_subcommand("verify-integrals", "Check declared first integrals");
  add_common(integrals, c);
  integrals->add_flag("--reductions", reductions, "Also check the reduction identities");

  auto* atlas_cmd = app.add_subcommand("atlas", "Check a chart atlas against the system");
  add_common(atlas_cmd, c);
  atlas_cmd->add_option("--atlas", atlas, "theorem31, theorem41 or prop62")->required();

  auto* unique = app.add_subcommand("uniqueness", "Quadratic fields polynomial in every chart of an atlas");
  add_common(unique, c);
  unique->add_option("--atlas", atlas, "theorem31 or theorem41")->required();

  auto* numeric = app.add_subcommand("numeric", "Fixed-step RK4 run with integral drift");
  add_common(numeric, c);
  numeric->add_option("--x0", x0, "Initial state a,b,c (exact or decimal, complex allowed)");
  numeric->add_option("--t", t_end, "End time");
  numeric->add_option("--step", step, "Step size");
  numeric->add_option("--sample", sample, "Record every n-th step");
  for (auto* s : {analyze, numeric}) s->add_option("--traj", traj, "Write the trajectory as CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (suite) {
      int failed = 0;
      for (const auto& r : run_acceptance(suite_seed)) {
        std::printf("%s %2d %-22s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
        failed += !r.pass;
      }
      if (app.get_subcommands().empty()) return failed ? kExitStrict : 0;
    }
    if (app.get_subcommands().empty()) {
      std::cout << app.help();
      return 0;
    }
    const SystemDoc doc = load(c.file);
    const auto values = report::parse_params(c.params);
    check_params(doc, values);
    const VField v = doc.field().with_params(values);
    CLI::App* sub = app.get_subcommands().front();
    json out = report::envelope(sub->get_name(), doc.name, c.seed);
    std::vector<std::string> failures;

    if (sub == analyze) {
      report::AnalyzeOptions opt;
      opt.charts = charts;
      opt.params = values;
      opt.skip_numeric = skip_numeric;
      opt.seed = c.seed;
      out = report::analyze(doc, opt);
      if (!traj.empty() && v.params().empty()) {
        std::ofstream f(traj);
        write_csv(f, integrate(v, CState(v.dimension(), cplx(0.5)), 0.0, 1.0, 1e-3), v.statevars());
      }
      return emit(out, c);
    }
    if (sub == painleve) {
      out["balances"] = report::balances_section(dominant_balances(v));
    } else if (sub == index) {
      const ChartedSystem cs = to_chart(v, report::chart_by_name(chart, v.statevars()));
      out["index"] = report::index_section(cs, report::parse_point(point));
    } else if (sub == resolve) {
      const VField base = doc.field();
      if (base.statevars() != lorenz_field().statevars() || base.components() != lorenz_field().components()) {
        throw std::invalid_argument("resolve applies to the three-parameter Lorenz family only");
      }
      out["resolution"] = report::resolution_section(values, failures);
    } else if (sub == integrals) {
      out["integrals"] = report::integrals_section(doc, values, failures);
      if (reductions) out["reductions"] = report::reductions_section(failures);
    } else if (sub == atlas_cmd) {
      AtlasSpec a = report::atlas_by_name(atlas).with_params(values);
      a.base = v;
      out["atlas"] = report::atlas_section(verify_atlas(a), failures);
    } else if (sub == unique) {
      AtlasSpec a = report::atlas_by_name(atlas).with_params(values);
      if (!a.base.params().empty()) {
        throw std::invalid_argument("uniqueness needs every atlas parameter bound with --params");
      }
      out["uniqueness"] = report::uniqueness_section(uniqueness_search(a), v, failures);
    } else if (sub == numeric) {
      const auto start = report::parse_numeric_point(x0);
      if (start.size() != v.dimension()) throw std::invalid_argument("--x0 needs one value per variable");
      const Trajectory tr = integrate(v, start, 0.0, t_end, step, sample);
      out["trajectory"] = report::trajectory_section(doc, v, tr);
      if (!traj.empty()) {
        std::ofstream f(traj);
        if (!f) throw std::runtime_error("cannot write " + traj);
        write_csv(f, tr, v.statevars());
      }
    }
    return emit(with_failures(out, failures), c);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const SourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}
