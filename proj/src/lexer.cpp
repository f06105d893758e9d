#include "masc/lexer.hpp"

#include <cctype>

namespace masc {

namespace {

// Multi-character punctuators, longest first so maximal munch works.
const char* kPuncts[] = {
    "<<=", ">>=", "<<", ">>", "<=", ">=", "==", "!=", "&&", "||",
    "++", "--", "+=", "-=", "*=", "%=", "&=", "|=", "^=",
    "{", "}", "(", ")", "[", "]", "<", ">", "+", "-", "*", "%",
    "&", "|", "^", "~", "!", "=", ";", ",", ":", "?", ".",
};

struct Lexer {
  const std::string& src;
  Diagnostics& diags;
  std::size_t pos = 0;
  int line = 1, col = 1;

  char peek(std::size_t ahead = 0) const {
    return pos + ahead < src.size() ? src[pos + ahead] : '\0';
  }
  void advance() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }
  SrcLoc here() const { return {line, col}; }

  // Recognize `// MASC: <expr> iterations`; returns true and fills bound
  // when the line comment at pos is a directive.
  bool directiveComment(std::string& bound, SrcLoc& loc) {
    std::size_t p = pos + 2;
    while (p < src.size() && (src[p] == ' ' || src[p] == '\t')) ++p;
    if (src.compare(p, 5, "MASC:") != 0) return false;
    p += 5;
    std::size_t end = src.find('\n', p);
    if (end == std::string::npos) end = src.size();
    std::string body = src.substr(p, end - p);
    // strip a trailing "iterations" keyword
    std::size_t kw = body.rfind("iterations");
    if (kw == std::string::npos) {
      diags.error(here(), "malformed MASC directive: expected "
                          "'// MASC: <expr> iterations'");
      return false;
    }
    bound = body.substr(0, kw);
    loc = here();
    // trim
    while (!bound.empty() && std::isspace((unsigned char)bound.front()))
      bound.erase(bound.begin());
    while (!bound.empty() && std::isspace((unsigned char)bound.back()))
      bound.pop_back();
    if (bound.empty())
      diags.error(loc, "MASC directive has an empty bound expression");
    return true;
  }

  std::vector<Token> run() {
    std::vector<Token> out;
    std::string pendingDirective;
    SrcLoc pendingLoc;
    while (pos < src.size()) {
      char c = peek();
      if (std::isspace((unsigned char)c)) {
        advance();
        continue;
      }
      if (c == '/' && peek(1) == '/') {
        std::string bound;
        SrcLoc loc;
        if (directiveComment(bound, loc)) {
          pendingDirective = bound;
          pendingLoc = loc;
        }
        while (pos < src.size() && peek() != '\n') advance();
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        SrcLoc start = here();
        advance();
        advance();
        while (pos < src.size() && !(peek() == '*' && peek(1) == '/')) advance();
        if (pos >= src.size()) {
          diags.error(start, "unterminated block comment");
        } else {
          advance();
          advance();
        }
        continue;
      }
      Token tok;
      tok.loc = here();
      if (std::isdigit((unsigned char)c)) {
        std::string digits;
        int base = 10;
        if (c == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
          base = 16;
          advance();
          advance();
          while (std::isxdigit((unsigned char)peek())) {
            digits += peek();
            advance();
          }
          if (digits.empty())
            diags.error(tok.loc, "hexadecimal literal with no digits");
        } else {
          while (std::isdigit((unsigned char)peek())) {
            digits += peek();
            advance();
          }
        }
        if (std::isalpha((unsigned char)peek()) || peek() == '_')
          diags.error(here(), "invalid character in numeric literal");
        tok.kind = Token::K::IntLit;
        tok.value = digits.empty() ? Int(0)
                                   : Int(base == 16 ? "0x" + digits : digits);
      } else if (std::isalpha((unsigned char)c) || c == '_') {
        std::string name;
        while (std::isalnum((unsigned char)peek()) || peek() == '_') {
          name += peek();
          advance();
        }
        tok.kind = Token::K::Ident;
        tok.text = std::move(name);
      } else if (c == '/') {
        diags.error(tok.loc, "division is not a MASC operator");
        advance();
        continue;
      } else {
        bool matched = false;
        for (const char* p : kPuncts) {
          std::size_t len = std::char_traits<char>::length(p);
          if (src.compare(pos, len, p) == 0) {
            tok.kind = Token::K::Punct;
            tok.text = p;
            for (std::size_t k = 0; k < len; ++k) advance();
            matched = true;
            break;
          }
        }
        if (!matched) {
          diags.error(tok.loc,
                      std::string("unexpected character '") + c + "'");
          advance();
          continue;
        }
      }
      if (!pendingDirective.empty()) {
        tok.directive = std::move(pendingDirective);
        tok.directiveLoc = pendingLoc;
        pendingDirective.clear();
      }
      out.push_back(std::move(tok));
    }
    Token end;
    end.kind = Token::K::End;
    end.loc = here();
    if (!pendingDirective.empty()) {
      end.directive = std::move(pendingDirective);
      end.directiveLoc = pendingLoc;
    }
    out.push_back(std::move(end));
    return out;
  }
};

}  // namespace

std::vector<Token> lex(const std::string& source, Diagnostics& diags) {
  Lexer lx{source, diags};
  return lx.run();
}

}  // namespace masc
