// Recursive-descent parser for MASC concrete syntax.
#pragma once

#include <string>

#include "masc/ast.hpp"
#include "masc/diagnostics.hpp"

namespace masc {

// Parse a whole program. Errors are reported through diags; the returned
// Program may be partial when diags.hasErrors().
Program parseProgram(const std::string& source, Diagnostics& diags);

// Parse a single expression (used for directive bounds); returns null on
// error.
ExprPtr parseExpression(const std::string& source, Diagnostics& diags);

// Render a Program back to MASC source text.
std::string printProgram(const Program& p);

}  // namespace masc
