#include "phasekit/docgen.hpp"

namespace phasekit {

std::string random_expression_text(std::mt19937_64& rng, const std::vector<std::string>& syms, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_int_distribution<int> small(-9, 9);
  const int k = depth <= 0 ? pick(rng) % 3 : pick(rng);
  auto sub = [&] { return random_expression_text(rng, syms, depth - 1); };
  switch (k) {
    case 0:
      return std::to_string(small(rng));
    case 1:
      return syms[static_cast<std::size_t>(pick(rng)) % syms.size()];
    case 2:
      return "i";
    case 3:
    case 4:
      return "(" + sub() + " + " + sub() + ")";
    case 5:
      return sub() + "*" + sub();
    case 6:
      return "-" + sub();
    case 7:
      return "(" + sub() + ")^" + std::to_string(pick(rng) % 3);
    case 8:
      return "(" + sub() + ")/" + std::to_string(1 + pick(rng));
    default:
      return sub() + " - " + sub();
  }
}

std::string random_document_text(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> nvar(1, 3);
  std::uniform_int_distribution<int> nparam(0, 2);
  std::uniform_int_distribution<int> rate(-7, 7);
  static const std::vector<std::string> var_pool{"x", "y", "z"};
  static const std::vector<std::string> par_pool{"a", "beta", "c2"};
  const std::vector<std::string> vars(var_pool.begin(), var_pool.begin() + nvar(rng));
  const std::vector<std::string> pars(par_pool.begin(), par_pool.begin() + nparam(rng));
  std::string text = "system g" + std::to_string(n) + "\n";
  if (!pars.empty()) {
    text += "params";
    for (const auto& p : pars) text += " " + p;
    text += "\n";
  }
  text += "vars";
  for (const auto& v : vars) text += " " + v;
  text += "\n";
  std::vector<std::string> syms = vars;
  syms.insert(syms.end(), pars.begin(), pars.end());
  if (coin(rng)) {
    text += "exp E rate " + std::to_string(rate(rng)) + "/" + std::to_string(1 + coin(rng)) + "\n";
    syms.push_back("E");
  }
  for (const auto& v : vars) text += "d" + v + "/dt = " + random_expression_text(rng, syms, 3) + "\n";
  if (coin(rng)) text += "integral J = " + random_expression_text(rng, syms, 2) + "\n";
  return text;
}

}  // namespace phasekit
