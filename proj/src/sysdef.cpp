#include "phasekit/sysdef.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace phasekit {

namespace {

struct Token {
  enum Kind { Ident, Number, Op, End } kind = End;
  std::string text;
  unsigned line = 0;
  unsigned col = 0;
};

struct Located {
  char c;
  unsigned line;
  unsigned col;
};

using Line = std::vector<Token>;

std::vector<Token> lex(const std::vector<Located>& chars, unsigned end_line, unsigned end_col) {
  std::vector<Token> out;
  std::size_t k = 0;
  const std::size_t n = chars.size();
  while (k < n) {
    const char c = chars[k].c;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++k;
      continue;
    }
    Token t;
    t.line = chars[k].line;
    t.col = chars[k].col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Token::Ident;
      while (k < n && (std::isalnum(static_cast<unsigned char>(chars[k].c)) || chars[k].c == '_')) t.text += chars[k++].c;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && k + 1 < n && std::isdigit(chars[k + 1].c))) {
      t.kind = Token::Number;
      bool dot = false;
      while (k < n && (std::isdigit(static_cast<unsigned char>(chars[k].c)) || (chars[k].c == '.' && !dot))) {
        if (chars[k].c == '.') dot = true;
        t.text += chars[k++].c;
      }
    } else if (std::string("+-*/^()=,:").find(c) != std::string::npos) {
      t.kind = Token::Op;
      t.text = std::string(1, c);
      ++k;
    } else {
      throw LexError(std::string("unexpected character '") + c + "'", t.line, t.col);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = end_line;
  end.col = end_col;
  out.push_back(end);
  return out;
}

mpq_class number_value(const Token& t) {
  const auto dot = t.text.find('.');
  if (dot == std::string::npos) return mpq_class(mpz_class(t.text, 10));
  std::string digits = t.text.substr(0, dot) + t.text.substr(dot + 1);
  if (digits.empty()) digits = "0";
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, t.text.size() - dot - 1);
  mpq_class q(mpz_class(digits, 10), scale);
  q.canonicalize();
  return q;
}

class ExprParser {
 public:
  ExprParser(const std::vector<Token>& toks, std::size_t pos, std::function<bool(const std::string&)> declared,
             bool general_division)
      : toks_(toks), pos_(pos), declared_(std::move(declared)), general_division_(general_division) {}

  RatExpr parse() { return expr(); }
  std::size_t pos() const { return pos_; }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool at_op(const char* op) const { return peek().kind == Token::Op && peek().text == op; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().col); }

  RatExpr expr() {
    RatExpr acc = term();
    while (at_op("+") || at_op("-")) {
      const bool plus = peek().text == "+";
      ++pos_;
      RatExpr rhs = term();
      if (plus) {
        acc += rhs;
      } else {
        acc -= rhs;
      }
    }
    return acc;
  }

  RatExpr term() {
    RatExpr acc = unary();
    while (at_op("*") || at_op("/")) {
      const bool mul = peek().text == "*";
      const Token op = peek();
      ++pos_;
      RatExpr rhs = unary();
      if (mul) {
        acc *= rhs;
        continue;
      }
      if (rhs.is_zero()) throw ParseError("division by zero", op.line, op.col);
      if (!general_division_ && !rhs.is_constant()) {
        throw ParseError("division by a non-constant expression", op.line, op.col);
      }
      acc /= rhs;
    }
    return acc;
  }

  RatExpr unary() {
    if (at_op("-")) {
      ++pos_;
      return -unary();
    }
    if (at_op("+")) {
      ++pos_;
      return unary();
    }
    return power();
  }

  RatExpr power() {
    RatExpr base = primary();
    if (!at_op("^")) return base;
    ++pos_;
    const Token& e = peek();
    if (e.kind != Token::Number || e.text.find('.') != std::string::npos) {
      fail("exponent must be a nonnegative integer literal");
    }
    if (e.text.size() > 3) fail("exponent too large");
    const int k = std::stoi(e.text);
    ++pos_;
    if (at_op("^")) fail("chained exponents need parentheses");
    return base.pow(k);
  }

  RatExpr primary() {
    const Token t = peek();
    switch (t.kind) {
      case Token::Number:
        ++pos_;
        return RatExpr(GaussQ(number_value(t)));
      case Token::Ident:
        ++pos_;
        if (t.text == "i") return RatExpr(GaussQ::i());
        if (!declared_(t.text)) throw UndeclaredSymbol(t.text, t.line, t.col);
        return RatExpr::variable(t.text);
      case Token::Op:
        if (t.text == "(") {
          ++pos_;
          RatExpr inner = expr();
          if (!at_op(")")) fail("expected ')'");
          ++pos_;
          return inner;
        }
        fail("unexpected '" + t.text + "'");
      case Token::End:
        fail("unexpected end of expression");
    }
    fail("unexpected token");
  }

  const std::vector<Token>& toks_;
  std::size_t pos_;
  std::function<bool(const std::string&)> declared_;
  bool general_division_;
};

/// Split a file into logical lines. A physical line continues the previous
/// one while parentheses are open, after a trailing operator or comma, or
/// when it starts with a binary operator. Comments are stripped here.
std::vector<std::vector<Token>> logical_lines(const std::string& text) {
  std::vector<std::string> raw_lines;
  {
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      const auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      raw_lines.push_back(raw);
    }
  }
  auto first_char = [](const std::string& s) {
    const auto k = s.find_first_not_of(" \t");
    return k == std::string::npos ? '\0' : s[k];
  };
  auto last_char = [](const std::string& s) {
    const auto k = s.find_last_not_of(" \t");
    return k == std::string::npos ? '\0' : s[k];
  };
  const std::string trailing = ",+-*/^(=:";
  const std::string leading = "+-*/^)";

  std::vector<std::vector<Token>> out;
  std::size_t k = 0;
  while (k < raw_lines.size()) {
    if (first_char(raw_lines[k]) == '\0') {
      ++k;
      continue;
    }
    std::vector<Located> cur;
    int depth = 0;
    unsigned last_line = 0;
    std::size_t last_len = 0;
    while (true) {
      const std::string& raw = raw_lines[k];
      const auto line = static_cast<unsigned>(k + 1);
      for (std::size_t c = 0; c < raw.size(); ++c) {
        cur.push_back({raw[c], line, static_cast<unsigned>(c + 1)});
        if (raw[c] == '(') ++depth;
        if (raw[c] == ')') --depth;
      }
      cur.push_back({' ', line, static_cast<unsigned>(raw.size() + 1)});
      last_line = line;
      last_len = raw.size();
      ++k;
      while (k < raw_lines.size() && first_char(raw_lines[k]) == '\0') ++k;
      if (k >= raw_lines.size()) break;
      const char tail = last_char(raw);
      const bool more = depth > 0 || trailing.find(tail) != std::string::npos ||
                        leading.find(first_char(raw_lines[k])) != std::string::npos;
      if (!more) break;
    }
    out.push_back(lex(cur, last_line, static_cast<unsigned>(last_len + 1)));
  }
  return out;
}

void expect_end(const std::vector<Token>& toks, std::size_t pos) {
  if (toks[pos].kind != Token::End) throw ParseError("unexpected '" + toks[pos].text + "'", toks[pos].line, toks[pos].col);
}

const Token& expect_ident(const std::vector<Token>& toks, std::size_t pos, const char* what) {
  if (toks[pos].kind != Token::Ident) throw ParseError(std::string("expected ") + what, toks[pos].line, toks[pos].col);
  return toks[pos];
}

void expect_op(const std::vector<Token>& toks, std::size_t pos, const char* op) {
  if (toks[pos].kind != Token::Op || toks[pos].text != op) {
    throw ParseError(std::string("expected '") + op + "'", toks[pos].line, toks[pos].col);
  }
}

bool is_derivative_line(const std::vector<Token>& t) {
  return t.size() >= 4 && t[0].kind == Token::Ident && t[0].text.size() > 1 && t[0].text[0] == 'd' &&
         t[1].kind == Token::Op && t[1].text == "/" && t[2].kind == Token::Ident && t[2].text == "dt";
}

}  // namespace

SystemDoc parse_system(const std::string& text) {
  const auto lines = logical_lines(text);
  if (lines.empty()) throw ParseError("empty document", 1, 1);

  SystemDoc doc;
  bool have_system = false;
  bool have_vars = false;
  std::set<std::string> symbols;
  auto declare = [&](const Token& t) {
    if (t.text == "i" || t.text == "dt") throw ParseError("reserved name '" + t.text + "'", t.line, t.col);
    if (!symbols.insert(t.text).second) throw ParseError("symbol declared twice: " + t.text, t.line, t.col);
  };

  // Declarations first so that use may precede declaration.
  for (const auto& t : lines) {
    const std::string& kw = t[0].text;
    if (t[0].kind != Token::Ident) continue;
    if (kw == "system") {
      if (have_system) throw ParseError("second system line", t[0].line, t[0].col);
      doc.name = expect_ident(t, 1, "system name").text;
      expect_end(t, 2);
      have_system = true;
    } else if (kw == "params" || kw == "vars") {
      if (kw == "vars" && have_vars) throw ParseError("second vars line", t[0].line, t[0].col);
      auto& list = kw == "params" ? doc.params : doc.vars;
      for (std::size_t k = 1; t[k].kind != Token::End; ++k) {
        if (t[k].kind == Token::Op && t[k].text == ",") continue;
        declare(expect_ident(t, k, "identifier"));
        list.push_back(t[k].text);
      }
      if (kw == "vars") have_vars = true;
    } else if (kw == "exp") {
      const Token& name = expect_ident(t, 1, "exponential symbol name");
      declare(name);
      const Token& rate_kw = expect_ident(t, 2, "'rate'");
      if (rate_kw.text != "rate") throw ParseError("expected 'rate'", rate_kw.line, rate_kw.col);
      ExprParser p(t, 3, [](const std::string&) { return false; }, false);
      RatExpr r = p.parse();
      expect_end(t, p.pos());
      doc.expsyms.push_back({name.text, r.constant_value()});
    }
  }
  if (!have_system) throw ParseError("missing 'system' line", lines[0][0].line, lines[0][0].col);
  if (!have_vars) throw ParseError("missing 'vars' line", lines[0][0].line, lines[0][0].col);

  std::set<std::string> var_set(doc.vars.begin(), doc.vars.end());
  auto any_declared = [&](const std::string& s) { return symbols.count(s) > 0; };
  std::map<std::string, RatExpr> derivs;
  std::set<std::string> integral_names;
  std::set<std::string> chart_names;

  for (const auto& t : lines) {
    const Token& head = t[0];
    if (head.kind != Token::Ident) throw ParseError("expected a statement", head.line, head.col);
    const std::string& kw = head.text;
    if (kw == "system" || kw == "params" || kw == "vars" || kw == "exp") continue;
    if (is_derivative_line(t)) {
      const std::string v = kw.substr(1);
      if (!var_set.count(v)) throw UndeclaredSymbol(v, head.line, head.col + 1);
      if (derivs.count(v)) throw ParseError("second equation for " + v, head.line, head.col);
      expect_op(t, 3, "=");
      ExprParser p(t, 4, any_declared, false);
      RatExpr e = p.parse();
      expect_end(t, p.pos());
      derivs.emplace(v, std::move(e));
    } else if (kw == "integral") {
      const Token& name = expect_ident(t, 1, "integral name");
      if (!integral_names.insert(name.text).second) throw ParseError("integral declared twice", name.line, name.col);
      expect_op(t, 2, "=");
      ExprParser p(t, 3, any_declared, false);
      RatExpr e = p.parse();
      expect_end(t, p.pos());
      doc.integrals.push_back({name.text, std::move(e)});
    } else if (kw == "chart") {
      const Token& name = expect_ident(t, 1, "chart name");
      if (!chart_names.insert(name.text).second) throw ParseError("chart declared twice", name.line, name.col);
      expect_op(t, 2, ":");
      // Entry boundaries are top-level commas.
      std::vector<std::size_t> starts{3};
      int depth = 0;
      for (std::size_t k = 3; t[k].kind != Token::End; ++k) {
        if (t[k].kind != Token::Op) continue;
        if (t[k].text == "(") ++depth;
        if (t[k].text == ")") --depth;
        if (t[k].text == "," && depth == 0) starts.push_back(k + 1);
      }
      ChartDecl c;
      c.name = name.text;
      std::map<std::string, RatExpr> inv;
      std::vector<std::size_t> fwd_starts;
      for (auto s : starts) {
        const Token& lhs = expect_ident(t, s, "chart coordinate");
        expect_op(t, s + 1, "=");
        if (var_set.count(lhs.text)) continue;
        if (any_declared(lhs.text) || lhs.text == "i") {
          throw ParseError("chart coordinate clashes with a declared symbol: " + lhs.text, lhs.line, lhs.col);
        }
        for (const auto& prev : c.targets) {
          if (prev == lhs.text) throw ParseError("chart coordinate repeated: " + lhs.text, lhs.line, lhs.col);
        }
        c.targets.push_back(lhs.text);
        fwd_starts.push_back(s);
      }
      std::set<std::string> target_set(c.targets.begin(), c.targets.end());
      auto in_target = [&](const std::string& s) { return target_set.count(s) > 0 || (any_declared(s) && !var_set.count(s)); };
      for (auto s : starts) {
        const Token& lhs = t[s];
        const bool is_inverse = var_set.count(lhs.text) > 0;
        ExprParser p(t, s + 2, is_inverse ? std::function<bool(const std::string&)>(in_target) : any_declared, true);
        RatExpr e = p.parse();
        const Token& after = t[p.pos()];
        if (after.kind != Token::End && !(after.kind == Token::Op && after.text == ",")) {
          throw ParseError("unexpected '" + after.text + "'", after.line, after.col);
        }
        if (is_inverse) {
          if (!inv.emplace(lhs.text, std::move(e)).second) {
            throw ParseError("inverse for " + lhs.text + " given twice", lhs.line, lhs.col);
          }
        } else {
          c.forward.push_back(std::move(e));
        }
      }
      if (c.targets.size() != doc.vars.size() || inv.size() != doc.vars.size()) {
        throw ArityMismatch("chart " + c.name + " needs " + std::to_string(doc.vars.size()) +
                                " coordinates and an inverse for every state variable",
                            name.line, name.col);
      }
      for (const auto& v : doc.vars) c.inverse.push_back(inv.at(v));
      try {
        RationalMap(doc.vars, c.targets, c.forward, c.inverse, c.name);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), name.line, name.col);
      } catch (const DivisionByZeroIdentically& e) {
        throw ParseError(e.what(), name.line, name.col);
      }
      doc.charts.push_back(std::move(c));
    } else {
      throw ParseError("unknown statement '" + kw + "'", head.line, head.col);
    }
  }
  for (const auto& v : doc.vars) {
    auto it = derivs.find(v);
    if (it == derivs.end()) {
      throw ArityMismatch("no equation for d" + v + "/dt (" + std::to_string(derivs.size()) + " equations for " +
                              std::to_string(doc.vars.size()) + " variables)",
                          lines.back()[0].line, 1);
    }
    doc.components.push_back(it->second);
  }
  return doc;
}

SystemDoc parse_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_system(ss.str());
}

RationalMap SystemDoc::chart_map(const std::string& chart) const {
  for (const auto& c : charts) {
    if (c.name == chart) return RationalMap(vars, c.targets, c.forward, c.inverse, c.name);
  }
  throw std::out_of_range("no chart named " + chart);
}

std::string print_system(const SystemDoc& doc) {
  std::ostringstream out;
  auto list = [&](const char* kw, const std::vector<std::string>& xs) {
    if (xs.empty()) return;
    out << kw;
    for (const auto& x : xs) out << ' ' << x;
    out << '\n';
  };
  out << "system " << doc.name << '\n';
  list("params", doc.params);
  list("vars", doc.vars);
  for (const auto& e : doc.expsyms) out << "exp " << e.name << " rate " << e.rate.str() << '\n';
  for (std::size_t k = 0; k < doc.vars.size(); ++k) {
    out << 'd' << doc.vars[k] << "/dt = " << doc.components[k].str() << '\n';
  }
  for (const auto& in : doc.integrals) out << "integral " << in.name << " = " << in.expr.str() << '\n';
  for (const auto& c : doc.charts) {
    out << "chart " << c.name << ':';
    for (std::size_t k = 0; k < c.targets.size(); ++k) out << ' ' << c.targets[k] << " = " << c.forward[k].str() << ',';
    for (std::size_t k = 0; k < doc.vars.size(); ++k) {
      out << ' ' << doc.vars[k] << " = " << c.inverse[k].str() << (k + 1 < doc.vars.size() ? "," : "");
    }
    out << '\n';
  }
  return out.str();
}

RatExpr parse_expression(const std::string& text, const std::set<std::string>& symbols, bool general_division) {
  std::vector<Located> chars;
  for (std::size_t k = 0; k < text.size(); ++k) chars.push_back({text[k], 1, static_cast<unsigned>(k + 1)});
  const auto toks = lex(chars, 1, static_cast<unsigned>(text.size() + 1));
  auto ok = [&](const std::string& s) { return symbols.empty() || symbols.count(s) > 0; };
  ExprParser p(toks, 0, ok, general_division);
  RatExpr e = p.parse();
  expect_end(toks, p.pos());
  return e;
}

GaussQ parse_gauss(const std::string& text) {
  std::vector<Located> chars;
  for (std::size_t k = 0; k < text.size(); ++k) chars.push_back({text[k], 1, static_cast<unsigned>(k + 1)});
  const auto toks = lex(chars, 1, static_cast<unsigned>(text.size() + 1));
  ExprParser p(toks, 0, [](const std::string&) { return false; }, false);
  RatExpr e = p.parse();
  expect_end(toks, p.pos());
  return e.constant_value();
}

}  // namespace phasekit
