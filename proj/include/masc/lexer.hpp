// Tokenizer for MASC concrete syntax.
#pragma once

#include <string>
#include <vector>

#include "masc/diagnostics.hpp"
#include "masc/numeric.hpp"

namespace masc {

struct Token {
  enum class K { Ident, IntLit, Punct, End };

  K kind = K::End;
  SrcLoc loc;
  std::string text;  // identifier spelling or punctuator
  Int value;         // IntLit

  // Bound expression of a `// MASC: <expr> iterations` directive comment
  // immediately preceding this token; empty when absent.
  std::string directive;
  SrcLoc directiveLoc;

  bool is(const char* punct) const {
    return kind == K::Punct && text == punct;
  }
  bool isIdent(const char* name) const {
    return kind == K::Ident && text == name;
  }
};

// Tokenize; lexical errors are reported through diags and the offending
// characters skipped. The result always ends with an End token.
std::vector<Token> lex(const std::string& source, Diagnostics& diags);

}  // namespace masc
