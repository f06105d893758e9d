// Built-in example and model programs, embedded as source text.
#pragma once

#include <string>
#include <vector>

#include "masc/ast.hpp"

namespace masc {

struct BundledProgram {
  std::string name;    // "divide", "sum8", "foo", "baz", "sf8i2", "imul"
  std::string source;  // MASC source text (same content as models/<name>.masc)
};

const std::vector<BundledProgram>& bundledPrograms();

// Source text of a bundled program, or null when the name is unknown.
const std::string* bundledSource(const std::string& name);

// Parse, rewrite bounded loops, and check a bundled program. Throws
// std::runtime_error on any diagnostic error (bundled sources are expected
// to be clean).
Program loadBundled(const std::string& name);

}  // namespace masc
