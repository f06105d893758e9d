// Imperative-to-functional translation: each function becomes a nest of
// LET/LET*/MV-LET bindings; each for loop becomes a recursive function
// with a derived termination measure.
#pragma once

#include <string>
#include <vector>

#include "masc/ast.hpp"
#include "masc/sexpr.hpp"

namespace masc {

struct FuncIR {
  std::string name;
  std::vector<std::string> params;
  SExpr measure;  // NIL when the function is not recursive
  SExpr body;

  bool recursive() const { return !measure.isNil(); }
  // Rendered (DEFUN name (params) [(DECLARE (XARGS :MEASURE m))] body).
  SExpr defun() const;
};

struct TranslateOptions {
  // Merge adjacent single-variable bindings into one LET/LET* group.
  bool mergeLets = true;
};

// Translate the emitted-AST forms (a list of DEFUNC forms, or a single
// one). Loop functions precede their parent function in the result.
std::vector<FuncIR> translateSexpr(const SExpr& defuncs,
                                   TranslateOptions opts = {});

// Convenience: emit the AST for a checked program and translate it.
std::vector<FuncIR> translate(const Program& p, TranslateOptions opts = {});

// Parse rendered DEFUN forms back into FuncIRs (the `.ir.lsp` format).
std::vector<FuncIR> parseFuncIRs(const std::vector<SExpr>& forms);

}  // namespace masc
