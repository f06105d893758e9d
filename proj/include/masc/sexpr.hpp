// Symbolic expressions: the emitted AST interchange format and the
// carrier of the functional IR.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "masc/numeric.hpp"

namespace masc {

struct SExprParseError : std::runtime_error {
  std::size_t line, col;
  SExprParseError(const std::string& msg, std::size_t line, std::size_t col)
      : std::runtime_error(msg + " at " + std::to_string(line) + ":" +
                           std::to_string(col)),
        line(line), col(col) {}
};

class SExpr {
 public:
  SExpr() : sym_("NIL"), isList_(false) {}

  static SExpr symbol(std::string s);
  static SExpr integer(Int n);
  static SExpr list(std::vector<SExpr> items);
  template <typename... Args>
  static SExpr make(Args&&... items) {
    std::vector<SExpr> v;
    (v.push_back(wrap(std::forward<Args>(items))), ...);
    return list(std::move(v));
  }

  bool isList() const { return isList_; }
  bool isSymbol() const { return !isList_ && !isInt_; }
  bool isInteger() const { return !isList_ && isInt_; }
  bool isNil() const { return isSymbol() && sym_ == "NIL"; }

  const std::string& sym() const { return sym_; }
  const Int& num() const { return num_; }
  const std::vector<SExpr>& items() const { return items_; }
  std::vector<SExpr>& items() { return items_; }
  std::size_t size() const { return items_.size(); }
  const SExpr& operator[](std::size_t i) const { return items_[i]; }

  // True for a list whose first element is the given symbol.
  bool headed(const std::string& head) const;

  bool operator==(const SExpr& other) const;

  // Single-line rendering.
  std::string str() const;
  // Multi-line rendering: forms wider than the limit break one child per
  // line, nested two spaces.
  std::string pretty(std::size_t width = 100) const;

 private:
  static SExpr wrap(SExpr s) { return s; }
  static SExpr wrap(const char* s) { return symbol(s); }
  static SExpr wrap(const std::string& s) { return symbol(s); }
  static SExpr wrap(Int n) { return integer(std::move(n)); }
  static SExpr wrap(int n) { return integer(n); }
  static SExpr wrap(std::int64_t n) { return integer(n); }

  std::string sym_;
  Int num_;
  std::vector<SExpr> items_;
  bool isList_ = false;
  bool isInt_ = false;
};

// Parse a single S-expression from text (must consume all input).
SExpr parseSexpr(const std::string& text);

// Parse a sequence of top-level S-expressions.
std::vector<SExpr> parseSexprFile(const std::string& text);

// Render a sequence of top-level forms, one (pretty-printed) form per
// paragraph.
std::string printSexprFile(const std::vector<SExpr>& forms);

}  // namespace masc
