// Emission of the S-expression AST: one DEFUNC form per function, with
// type-informed BITS/FL/INTVAL wrapping of terms.
#pragma once

#include "masc/ast.hpp"
#include "masc/sexpr.hpp"

namespace masc {

// All functions of a checked program, as a list of DEFUNC forms.
SExpr emitAstSexpr(const Program& p);

// A single function as a DEFUNC form.
SExpr emitFunctionSexpr(const Program& p, const FunctionDef& fn);

}  // namespace masc
