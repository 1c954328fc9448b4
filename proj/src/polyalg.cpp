#include "phasekit/polyalg.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "phasekit/errors.hpp"

namespace phasekit {

namespace {

bool divides_exponent(const MultiPoly::Exponent& d, const MultiPoly::Exponent& e) {
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k] > e[k]) return false;
  }
  return true;
}

}  // namespace

std::optional<MultiPoly> try_exact_div(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw DivisionByZeroIdentically("exact_div by zero polynomial");
  if (a.is_zero()) return MultiPoly();
  if (b.is_constant()) return a * b.constant_term().inverse();
  for (const auto& v : b.vars()) {
    if (!a.has_var(v)) return std::nullopt;
  }
  const auto& vars = a.vars();
  auto rem = a.terms();
  const auto bt = b.aligned_terms(vars);
  const auto& [lead_e, lead_c] = *bt.rbegin();
  const GaussQ lead_inv = lead_c.inverse();
  MultiPoly::TermMap quot;
  MultiPoly::Exponent shift(vars.size());
  while (!rem.empty()) {
    const auto& [re, rc] = *rem.rbegin();
    if (!divides_exponent(lead_e, re)) return std::nullopt;
    for (std::size_t k = 0; k < shift.size(); ++k) shift[k] = re[k] - lead_e[k];
    const GaussQ q = rc * lead_inv;
    quot.emplace(shift, q);
    MultiPoly::Exponent e(vars.size());
    for (const auto& [be, bc] : bt) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = be[k] + shift[k];
      GaussQ delta = q * bc;
      auto it = rem.find(e);
      if (it == rem.end()) {
        rem.emplace(e, -delta);
      } else {
        it->second -= delta;
        if (it->second.is_zero()) rem.erase(it);
      }
    }
  }
  return MultiPoly::from_terms(vars, std::move(quot));
}

MultiPoly exact_div(const MultiPoly& a, const MultiPoly& b) {
  auto q = try_exact_div(a, b);
  if (!q) throw NotDivisible("(" + a.str() + ") is not divisible by (" + b.str() + ")");
  return *q;
}

MultiPoly make_monic(const MultiPoly& p) {
  if (p.is_zero()) return p;
  GaussQ lc = p.leading_coeff();
  if (lc.is_one()) return p;
  return p * lc.inverse();
}

namespace {

MultiPoly monomial_gcd(const MultiPoly& a, const MultiPoly& b) {
  // a, b are monomials with coefficient 1
  auto target = MultiPoly::merge_vars(a.vars(), b.vars());
  const auto ta = a.aligned_terms(target);
  const auto tb = b.aligned_terms(target);
  MultiPoly::Exponent e(target.size());
  const auto& ea = ta.begin()->first;
  const auto& eb = tb.begin()->first;
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = std::min(ea[k], eb[k]);
  MultiPoly::TermMap t;
  t.emplace(e, GaussQ(1));
  return MultiPoly::from_terms(target, std::move(t));
}

using UPoly = std::vector<MultiPoly>;  // coefficients in the main variable

void trim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly pseudo_remainder(UPoly a, const UPoly& b) {
  const std::size_t db = b.size() - 1;
  const MultiPoly& lcb = b.back();
  trim(a);
  if (a.size() < b.size()) return a;
  int e = static_cast<int>(a.size() - b.size()) + 1;
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t d = a.size() - 1 - db;
    const MultiPoly lca = a.back();
    for (auto& c : a) c *= lcb;
    for (std::size_t k = 0; k <= db; ++k) a[k + d] -= lca * b[k];
    trim(a);
    --e;
  }
  if (e > 0 && !a.empty()) {
    MultiPoly f = lcb.pow(static_cast<unsigned>(e));
    for (auto& c : a) c *= f;
  }
  return a;
}

MultiPoly gcd_impl(const MultiPoly& a, const MultiPoly& b);

MultiPoly content_of(const UPoly& p) {
  MultiPoly g;
  for (const auto& c : p) {
    if (c.is_zero()) continue;
    g = gcd_impl(g, c);
    if (g.is_constant()) return MultiPoly(1);
  }
  return g;
}

UPoly primitive_part(const UPoly& p) {
  MultiPoly c = content_of(p);
  if (c.is_constant()) {
    // Normalize numerically so coefficients stay small.
    GaussQ lc = p.back().leading_coeff().inverse();
    UPoly out;
    out.reserve(p.size());
    for (const auto& x : p) out.push_back(x * lc);
    return out;
  }
  UPoly out;
  out.reserve(p.size());
  for (const auto& x : p) out.push_back(exact_div(x, c));
  return out;
}

/// gcd of two polynomials primitive in `var`, both of positive degree in it.
MultiPoly primitive_prs(const MultiPoly& pa, const MultiPoly& pb, const std::string& var) {
  UPoly a = pa.coefficients(var);
  UPoly b = pb.coefficients(var);
  if (a.size() < b.size()) std::swap(a, b);
  while (true) {
    if (b.size() <= 1) return MultiPoly(1);
    UPoly r = pseudo_remainder(a, b);
    if (r.empty()) return make_monic(MultiPoly::from_coefficients(var, primitive_part(b)));
    a = std::move(b);
    b = primitive_part(r);
  }
}

MultiPoly gcd_impl(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  if (a.is_constant() || b.is_constant()) return MultiPoly(1);
  if (a.is_monomial() || b.is_monomial()) {
    return monomial_gcd(a.monomial_content(), b.monomial_content());
  }
  const MultiPoly ma = a.monomial_content();
  const MultiPoly mb = b.monomial_content();
  const MultiPoly g0 = monomial_gcd(ma, mb);
  const MultiPoly a1 = ma.is_constant() ? a : exact_div(a, ma);
  const MultiPoly b1 = mb.is_constant() ? b : exact_div(b, mb);
  if (a1.is_constant() || b1.is_constant()) return g0;
  if (make_monic(a1) == make_monic(b1)) return g0 * make_monic(a1);

  // A variable present in only one argument cannot occur in the gcd.
  for (const auto& v : a1.vars()) {
    if (!b1.has_var(v)) return g0 * gcd_impl(content(a1, v), b1);
  }
  for (const auto& v : b1.vars()) {
    if (!a1.has_var(v)) return g0 * gcd_impl(a1, content(b1, v));
  }
  // Main variable: smallest combined degree.
  std::string var;
  unsigned best = ~0U;
  for (const auto& v : a1.vars()) {
    unsigned d = a1.degree(v) + b1.degree(v);
    if (d < best) {
      best = d;
      var = v;
    }
  }
  const MultiPoly ca = content(a1, var);
  const MultiPoly cb = content(b1, var);
  const MultiPoly pa = ca.is_constant() ? a1 : exact_div(a1, ca);
  const MultiPoly pb = cb.is_constant() ? b1 : exact_div(b1, cb);
  MultiPoly g = gcd_impl(ca, cb) * primitive_prs(pa, pb, var);
  return make_monic(g0 * g);
}

}  // namespace

MultiPoly content(const MultiPoly& p, const std::string& var) {
  if (!p.has_var(var)) return make_monic(p);
  return make_monic(content_of(p.coefficients(var)));
}

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) { return make_monic(gcd_impl(a, b)); }

MultiPoly gcd(const std::vector<MultiPoly>& ps) {
  MultiPoly g;
  for (const auto& p : ps) {
    g = gcd(g, p);
    if (!g.is_zero() && g.is_constant()) return MultiPoly(1);
  }
  return g;
}

MultiPoly resultant(const MultiPoly& a, const MultiPoly& b, const std::string& var) {
  if (a.is_zero() || b.is_zero()) return MultiPoly();
  const unsigned m = a.degree(var);
  const unsigned n = b.degree(var);
  if (m == 0 && n == 0) return MultiPoly(1);
  if (m == 0) return a.pow(n);
  if (n == 0) return b.pow(m);
  const UPoly ca = a.coefficients(var);
  const UPoly cb = b.coefficients(var);
  const std::size_t size = m + n;
  std::vector<std::vector<MultiPoly>> s(size, std::vector<MultiPoly>(size));
  // Rows hold coefficients from the leading one down.
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = ca[m - k];
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = cb[n - k];
  }
  // Bareiss fraction-free elimination.
  MultiPoly prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < size; ++k) {
    if (s[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < size && s[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == size) return MultiPoly();
      std::swap(s[k], s[swap_row]);
      negate = !negate;
    }
    for (std::size_t r = k + 1; r < size; ++r) {
      for (std::size_t c = k + 1; c < size; ++c) {
        MultiPoly t = s[r][c] * s[k][k] - s[r][k] * s[k][c];
        s[r][c] = exact_div(t, prev);
      }
      s[r][k] = MultiPoly();
    }
    prev = s[k][k];
  }
  MultiPoly det = s[size - 1][size - 1];
  return negate ? -det : det;
}

MultiPoly square_free_part(const MultiPoly& p, const std::string& var) {
  if (p.degree(var) == 0) return p;
  MultiPoly g = gcd(p, p.derivative(var));
  return g.is_constant() ? make_monic(p) : make_monic(exact_div(p, g));
}

namespace {

mpz_class lcm_denominators(const std::vector<GaussQ>& cs) {
  mpz_class l = 1;
  for (const auto& c : cs) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.re().get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.im().get_den_mpz_t());
  }
  return l;
}

GaussQ associate_representative(const GaussQ& d) {
  // Rotate by units until re > 0 and im >= 0.
  GaussQ r = d;
  for (int k = 0; k < 4; ++k) {
    if (sgn(r.re()) > 0 && sgn(r.im()) >= 0) return r;
    r *= GaussQ::i();
  }
  return r;
}

std::vector<unsigned long long> integer_divisors(unsigned long long n) {
  std::vector<unsigned long long> primes;
  std::vector<unsigned> mult;
  unsigned long long m = n;
  for (unsigned long long p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    primes.push_back(p);
    mult.push_back(0);
    while (m % p == 0) {
      m /= p;
      ++mult.back();
    }
  }
  if (m > 1) {
    primes.push_back(m);
    mult.push_back(1);
  }
  std::vector<unsigned long long> divs{1};
  for (std::size_t k = 0; k < primes.size(); ++k) {
    const std::size_t base = divs.size();
    unsigned long long pw = 1;
    for (unsigned j = 0; j < mult[k]; ++j) {
      pw *= primes[k];
      for (std::size_t t = 0; t < base; ++t) divs.push_back(divs[t] * pw);
    }
  }
  return divs;
}

GaussQ horner(const std::vector<GaussQ>& c, const GaussQ& x) {
  GaussQ acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

/// Divide by (t - r) when exact; returns false if r is not a root.
bool deflate(std::vector<GaussQ>& c, const GaussQ& r) {
  if (c.size() < 2) return false;
  std::vector<GaussQ> q(c.size() - 1);
  GaussQ acc(0);
  for (std::size_t k = c.size(); k-- > 1;) {
    acc = acc * r + c[k];
    q[k - 1] = acc;
  }
  GaussQ rem = acc * r + c[0];
  if (!rem.is_zero()) return false;
  c = std::move(q);
  return true;
}

std::vector<GaussQ> constant_coefficients(const MultiPoly& p, const std::string& var) {
  for (const auto& v : p.vars()) {
    if (v != var) throw std::invalid_argument("gaussian_roots: polynomial involves " + v + " besides " + var);
  }
  std::vector<GaussQ> out;
  for (const auto& c : p.coefficients(var)) out.push_back(c.constant_term());
  return out;
}

}  // namespace

std::vector<GaussQ> gaussian_divisors(const GaussQ& g, unsigned long long norm_cap) {
  if (!g.is_gaussian_integer() || g.is_zero()) return {};
  mpz_class n = g.norm().get_num();
  if (n > mpz_class(std::to_string(norm_cap))) return {};
  const unsigned long long nn = n.get_ui();
  std::set<std::pair<long long, long long>> seen;
  std::vector<GaussQ> out;
  for (auto dn : integer_divisors(nn)) {
    const auto lim = static_cast<long long>(std::sqrt(static_cast<long double>(dn)));
    for (long long x = 0; x <= lim + 1; ++x) {
      const long long rest = static_cast<long long>(dn) - x * x;
      if (rest < 0) break;
      auto y = static_cast<long long>(std::llround(std::sqrt(static_cast<long double>(rest))));
      if (y * y != rest) continue;
      for (long long sy : {y, -y}) {
        GaussQ d{mpq_class(static_cast<long>(x)), mpq_class(static_cast<long>(sy))};
        if (d.is_zero()) continue;
        GaussQ q = g / d;
        if (!q.is_gaussian_integer()) continue;
        GaussQ rep = associate_representative(d);
        auto key = std::make_pair(rep.re().get_num().get_si(), rep.im().get_num().get_si());
        if (seen.insert(key).second) out.push_back(rep);
      }
    }
  }
  return out;
}

GaussianRootSet gaussian_roots(const MultiPoly& p, const std::string& var) {
  if (p.is_zero()) throw std::invalid_argument("gaussian_roots of zero polynomial");
  std::vector<GaussQ> c = constant_coefficients(p, var);
  GaussianRootSet out;
  while (c.size() > 1 && c.front().is_zero()) {
    c.erase(c.begin());
    out.exact.push_back(GaussQ(0));
  }
  if (c.size() > 1) {
    // Candidates from the square-free part with Gaussian-integer coefficients.
    MultiPoly sf = square_free_part(MultiPoly::from_coefficients(var, [&] {
      std::vector<MultiPoly> v;
      for (const auto& x : c) v.emplace_back(x);
      return v;
    }()), var);
    std::vector<GaussQ> s = constant_coefficients(sf, var);
    const mpz_class l = lcm_denominators(s);
    for (auto& x : s) x *= GaussQ(mpq_class(l));
    std::vector<GaussQ> roots;
    auto try_root = [&](const GaussQ& r) {
      for (const auto& known : roots) {
        if (known == r) return;
      }
      if (horner(s, r).is_zero()) roots.push_back(r);
    };
    if (s.size() == 2) {
      try_root(-s[0] / s[1]);
    } else if (s.size() == 3) {
      // Quadratic: closed form when the discriminant is a square in Q(i).
      GaussQ disc = s[1] * s[1] - GaussQ(4) * s[2] * s[0];
      if (auto sq = disc.sqrt()) {
        try_root((-s[1] + *sq) / (GaussQ(2) * s[2]));
        try_root((-s[1] - *sq) / (GaussQ(2) * s[2]));
      }
    } else {
      const auto lead_divs = gaussian_divisors(s.back());
      const auto trail_divs = gaussian_divisors(s.front());
      const GaussQ units[4] = {GaussQ(1), GaussQ::i(), GaussQ(-1), -GaussQ::i()};
      for (const auto& d1 : trail_divs) {
        for (const auto& d2 : lead_divs) {
          for (const auto& u : units) try_root(u * d1 / d2);
        }
      }
      if (lead_divs.empty() || trail_divs.empty()) {
        // Coefficients too large to enumerate: try rationalized numeric roots.
        std::vector<std::complex<double>> cc;
        for (const auto& x : s) cc.push_back(x.to_complex());
        for (const auto& z : numeric_roots(cc)) {
          // Round to a modest denominator before the exact test.
          for (long den : {1L, 2L, 3L, 4L, 6L, 8L, 9L, 12L, 16L, 27L}) {
            mpq_class rr(static_cast<long>(std::llround(z.real() * den)), den);
            mpq_class ri(static_cast<long>(std::llround(z.imag() * den)), den);
            rr.canonicalize();
            ri.canonicalize();
            try_root(GaussQ(rr, ri));
          }
        }
      }
    }
    for (const auto& r : roots) {
      while (deflate(c, r)) out.exact.push_back(r);
    }
  }
  std::sort(out.exact.begin(), out.exact.end(), [](const GaussQ& a, const GaussQ& b) { return lex_less(a, b); });
  std::vector<MultiPoly> rem;
  for (const auto& x : c) rem.emplace_back(x);
  out.remainder = make_monic(MultiPoly::from_coefficients(var, rem));
  return out;
}

std::vector<std::complex<double>> numeric_roots(const std::vector<std::complex<double>>& coeffs_in) {
  using cd = std::complex<double>;
  std::vector<cd> c = coeffs_in;
  while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
  std::vector<cd> roots;
  while (c.size() > 1 && std::abs(c.front()) == 0.0) {
    c.erase(c.begin());
    roots.emplace_back(0.0, 0.0);
  }
  const std::size_t n = c.size() > 0 ? c.size() - 1 : 0;
  if (n == 0) return roots;
  auto eval = [&](cd x, cd& dp) {
    cd p = c[n];
    dp = 0;
    for (std::size_t k = n; k-- > 0;) {
      dp = dp * x + p;
      p = p * x + c[k];
    }
    return p;
  };
  // Initial guesses on a circle sized by the Cauchy bound.
  double bound = 0;
  for (std::size_t k = 0; k < n; ++k) bound = std::max(bound, std::abs(c[k] / c[n]));
  bound = 1 + bound;
  std::vector<cd> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    double ang = 2 * M_PI * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(0.5 * bound, ang);
  }
  for (int iter = 0; iter < 500; ++iter) {
    double moved = 0;
    for (std::size_t k = 0; k < n; ++k) {
      cd dp;
      cd p = eval(z[k], dp);
      if (std::abs(p) == 0.0) continue;
      cd ratio = p / dp;
      cd sum = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      }
      cd w = ratio / (1.0 - ratio * sum);
      z[k] -= w;
      moved = std::max(moved, std::abs(w) / (1 + std::abs(z[k])));
    }
    if (moved < 1e-16) break;
  }
  for (auto& r : z) {
    for (int k = 0; k < 3; ++k) {
      cd dp;
      cd p = eval(r, dp);
      if (std::abs(dp) == 0.0) break;
      r -= p / dp;
    }
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

std::vector<std::complex<double>> numeric_roots(const MultiPoly& p, const std::string& var) {
  std::vector<std::complex<double>> c;
  for (const auto& x : constant_coefficients(p, var)) c.push_back(x.to_complex());
  return numeric_roots(c);
}

}  // namespace phasekit
