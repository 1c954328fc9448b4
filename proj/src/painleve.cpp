#include "phasekit/painleve.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "phasekit/solver.hpp"

namespace phasekit {

namespace {

struct Term {
  long order;
  MultiPoly coeff;  // in the coefficient unknowns
};

/// Terms of rhs_k - dx_k/dt under x_j -> c_j tau^(-e_j).
std::vector<Term> equation_terms(const VField& v, std::size_t k, const std::vector<unsigned>& e,
                                 const std::vector<std::string>& unknowns) {
  const auto& vars = v.statevars();
  std::vector<Term> out;
  const MultiPoly ck = MultiPoly::variable(unknowns[k]);
  out.push_back({-static_cast<long>(e[k]) - 1, ck * GaussQ(static_cast<long>(e[k]))});
  const RatExpr& comp = v.component(k);
  const MultiPoly rhs = comp.num() * comp.den().constant_term().inverse();
  const auto& pv = rhs.vars();
  for (const auto& [exp, c] : rhs.terms()) {
    long order = 0;
    MultiPoly coeff(c);
    for (std::size_t j = 0; j < pv.size(); ++j) {
      if (exp[j] == 0) continue;
      auto it = std::find(vars.begin(), vars.end(), pv[j]);
      if (it == vars.end()) {
        coeff *= MultiPoly::variable(pv[j], exp[j]);
        continue;
      }
      const auto idx = static_cast<std::size_t>(it - vars.begin());
      order -= static_cast<long>(e[idx] * exp[j]);
      coeff *= MultiPoly::variable(unknowns[idx], exp[j]);
    }
    out.push_back({order, coeff});
  }
  return out;
}

std::vector<std::string> coefficient_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back("c__" + std::to_string(k));
  return out;
}

/// Leading equations for exponent vector e; empty when some equation has a
/// single dominant term.
std::vector<MultiPoly> leading_equations(const VField& v, const std::vector<unsigned>& e,
                                         const std::vector<std::string>& unknowns) {
  std::vector<MultiPoly> eqs;
  for (std::size_t k = 0; k < v.dimension(); ++k) {
    const auto terms = equation_terms(v, k, e, unknowns);
    long lo = std::numeric_limits<long>::max();
    for (const auto& t : terms) lo = std::min(lo, t.order);
    MultiPoly sum;
    int count = 0;
    for (const auto& t : terms) {
      if (t.order == lo) {
        sum += t.coeff;
        ++count;
      }
    }
    if (count < 2) return {};
    eqs.push_back(sum);
  }
  return eqs;
}

}  // namespace

std::string Balance::str() const {
  std::ostringstream out;
  out << "exponents (";
  for (std::size_t k = 0; k < exponents.size(); ++k) out << (k ? "," : "") << exponents[k];
  out << ") coefficients (";
  for (std::size_t k = 0; k < coefficients.size(); ++k) out << (k ? ", " : "") << coefficients[k].str();
  out << ")";
  return out.str();
}

std::vector<Balance> dominant_balances(const VField& v, unsigned max_exp) {
  if (!v.is_polynomial()) throw std::invalid_argument("dominant_balances needs a polynomial field");
  const std::size_t n = v.dimension();
  const auto unknowns = coefficient_names(n);
  const std::set<std::string> nonzero(unknowns.begin(), unknowns.end());
  std::vector<Balance> out;
  std::vector<unsigned> e(n, 1);
  while (true) {
    auto eqs = leading_equations(v, e, unknowns);
    bool usable = !eqs.empty();
    for (const auto& q : eqs) {
      for (const auto& s : q.vars()) {
        if (!nonzero.count(s)) usable = false;
      }
    }
    if (usable) {
      const SolveResult sol = solve_system(eqs, unknowns, nonzero);
      int branch = 0;
      for (const auto& f : sol.exact) {
        if (!f.is_point()) continue;
        out.push_back({e, f.point(unknowns), branch++});
      }
    }
    std::size_t k = 0;
    while (k < n && e[k] == max_exp) e[k++] = 1;
    if (k == n) break;
    ++e[k];
  }
  return out;
}

std::vector<GaussQ> balance_residuals(const VField& v, const Balance& b) {
  const auto unknowns = coefficient_names(v.dimension());
  std::map<std::string, GaussQ> at;
  for (std::size_t k = 0; k < unknowns.size(); ++k) at.emplace(unknowns[k], b.coefficients[k]);
  std::vector<GaussQ> out;
  for (std::size_t k = 0; k < v.dimension(); ++k) {
    const auto terms = equation_terms(v, k, b.exponents, unknowns);
    long lo = std::numeric_limits<long>::max();
    for (const auto& t : terms) lo = std::min(lo, t.order);
    MultiPoly sum;
    for (const auto& t : terms) {
      if (t.order == lo) sum += t.coeff;
    }
    const MultiPoly r = sum.evaluate(at);
    out.push_back(r.is_constant() ? r.constant_term() : GaussQ(1));
  }
  return out;
}

Chart balance_to_chart(const Balance& b, const std::vector<std::string>& vars, std::vector<std::string> names) {
  unsigned g = 0;
  for (unsigned w : b.exponents) g = std::gcd(g, w);
  std::vector<unsigned> w = b.exponents;
  if (g > 1) {
    for (auto& x : w) x /= g;
  }
  return weighted_chart(w, vars, 0, std::move(names));
}

}  // namespace phasekit
