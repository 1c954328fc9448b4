#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "phasekit/errors.hpp"
#include "phasekit/field.hpp"

namespace phasekit {

/// Base for errors that carry a 1-based source position.
class SourceError : public Error {
 public:
  SourceError(const std::string& kind, const std::string& msg, unsigned line, unsigned col)
      : Error(kind + " at " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
  unsigned line() const { return line_; }
  unsigned column() const { return col_; }

 private:
  unsigned line_;
  unsigned col_;
};

class LexError : public SourceError {
 public:
  LexError(const std::string& msg, unsigned line, unsigned col) : SourceError("LexError", msg, line, col) {}
};

class ParseError : public SourceError {
 public:
  ParseError(const std::string& msg, unsigned line, unsigned col) : SourceError("ParseError", msg, line, col) {}
};

class UndeclaredSymbol : public SourceError {
 public:
  UndeclaredSymbol(const std::string& name, unsigned line, unsigned col)
      : SourceError("UndeclaredSymbol", name, line, col) {}
};

class ArityMismatch : public SourceError {
 public:
  ArityMismatch(const std::string& msg, unsigned line, unsigned col) : SourceError("ArityMismatch", msg, line, col) {}
};

/// Chart declared in a document: new coordinates given in the state
/// variables, plus the inverse giving the state variables back.
struct ChartDecl {
  std::string name;
  std::vector<std::string> targets;
  std::vector<RatExpr> forward;
  std::vector<RatExpr> inverse;

  friend bool operator==(const ChartDecl&, const ChartDecl&) = default;
};

struct IntegralDecl {
  std::string name;
  RatExpr expr;

  friend bool operator==(const IntegralDecl&, const IntegralDecl&) = default;
};

struct SystemDoc {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::string> vars;
  std::vector<RatExpr> components;
  std::vector<ExpSymbol> expsyms;
  std::vector<IntegralDecl> integrals;
  std::vector<ChartDecl> charts;

  VField field() const { return VField(name, vars, components, params, expsyms); }
  /// Checked map for a declared chart; throws std::out_of_range if absent.
  RationalMap chart_map(const std::string& chart) const;

  friend bool operator==(const SystemDoc&, const SystemDoc&) = default;
};

SystemDoc parse_system(const std::string& text);
SystemDoc parse_system_file(const std::string& path);

/// Canonical text; parse_system(print_system(d)) == d.
std::string print_system(const SystemDoc& doc);

/// Parse a single expression. An empty `symbols` set accepts any identifier.
RatExpr parse_expression(const std::string& text, const std::set<std::string>& symbols = {},
                         bool general_division = true);

/// Parse an exact constant such as "8/3", "-2", "1/2+i" or "0.25".
GaussQ parse_gauss(const std::string& text);

}  // namespace phasekit
