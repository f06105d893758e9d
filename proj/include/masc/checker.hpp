// Static checks and the bounded-iteration rewrite.
#pragma once

#include "masc/ast.hpp"
#include "masc/diagnostics.hpp"

namespace masc {

// Annotate and validate a parsed Program in place: name resolution with no
// shadowing, type rules, loop shape, return well-formedness, definite
// assignment, constant folding. Sets p.checked when no errors were found.
void checkProgram(Program& p, Diagnostics& diags);

// Rewrite every directive-carrying `while` loop (and non-compliant `for`
// loop) into a compliant bounded `for` loop with a fresh counter. Runs on a
// parsed (not yet checked) Program.
void rewriteBoundedLoops(Program& p, Diagnostics& diags);

// Names assigned anywhere within a statement (targets of assignments,
// multiple-value assignments, and declarations).
std::vector<std::string> assignedNames(const Stmt& s);

}  // namespace masc
