#include "masc/sexpr.hpp"

#include <cctype>
#include <sstream>

namespace masc {

SExpr SExpr::symbol(std::string s) {
  SExpr e;
  e.sym_ = std::move(s);
  return e;
}

SExpr SExpr::integer(Int n) {
  SExpr e;
  e.sym_.clear();
  e.num_ = std::move(n);
  e.isInt_ = true;
  return e;
}

SExpr SExpr::list(std::vector<SExpr> items) {
  SExpr e;
  e.sym_.clear();
  e.items_ = std::move(items);
  e.isList_ = true;
  return e;
}

bool SExpr::headed(const std::string& head) const {
  return isList_ && !items_.empty() && items_[0].isSymbol() &&
         items_[0].sym_ == head;
}

bool SExpr::operator==(const SExpr& other) const {
  if (isList_ != other.isList_ || isInt_ != other.isInt_) return false;
  if (isList_) return items_ == other.items_;
  if (isInt_) return num_ == other.num_;
  return sym_ == other.sym_;
}

std::string SExpr::str() const {
  if (isInteger()) return num_.str();
  if (isSymbol()) return sym_;
  std::string out = "(";
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) out += " ";
    out += items_[i].str();
  }
  out += ")";
  return out;
}

namespace {

void prettyRec(const SExpr& e, std::size_t indent, std::size_t width,
               std::string& out) {
  std::string flat = e.str();
  if (!e.isList() || indent + flat.size() <= width || e.size() <= 1) {
    out += flat;
    return;
  }
  out += "(";
  prettyRec(e[0], indent + 1, width, out);
  for (std::size_t i = 1; i < e.size(); ++i) {
    out += "\n";
    out.append(indent + 2, ' ');
    prettyRec(e[i], indent + 2, width, out);
  }
  out += ")";
}

struct Reader {
  const std::string& text;
  std::size_t pos = 0, line = 1, col = 1;

  explicit Reader(const std::string& t) : text(t) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw SExprParseError(msg, line, col);
  }

  void advance() {
    if (text[pos] == '\n') { ++line; col = 1; } else ++col;
    ++pos;
  }

  void skipSpace() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == ';') {  // comment to end of line
        while (pos < text.size() && text[pos] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool atEnd() {
    skipSpace();
    return pos >= text.size();
  }

  SExpr read() {
    skipSpace();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      advance();
      std::vector<SExpr> items;
      while (true) {
        skipSpace();
        if (pos >= text.size()) fail("unterminated list");
        if (text[pos] == ')') { advance(); break; }
        items.push_back(read());
      }
      return SExpr::list(std::move(items));
    }
    if (c == ')') fail("unexpected ')'");
    std::size_t start = pos;
    while (pos < text.size()) {
      char d = text[pos];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' ||
          d == ')' || d == ';')
        break;
      advance();
    }
    std::string tok = text.substr(start, pos - start);
    bool numeric = !tok.empty();
    std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (i == tok.size()) numeric = false;
    for (; i < tok.size() && numeric; ++i)
      if (!std::isdigit(static_cast<unsigned char>(tok[i]))) numeric = false;
    if (numeric) return SExpr::integer(Int(tok));
    return SExpr::symbol(std::move(tok));
  }
};

}  // namespace

std::string SExpr::pretty(std::size_t width) const {
  std::string out;
  prettyRec(*this, 0, width, out);
  return out;
}

SExpr parseSexpr(const std::string& text) {
  Reader r(text);
  SExpr e = r.read();
  if (!r.atEnd()) r.fail("trailing input after expression");
  return e;
}

std::vector<SExpr> parseSexprFile(const std::string& text) {
  Reader r(text);
  std::vector<SExpr> forms;
  while (!r.atEnd()) forms.push_back(r.read());
  return forms;
}

std::string printSexprFile(const std::vector<SExpr>& forms) {
  std::ostringstream os;
  for (const auto& f : forms) os << f.pretty() << "\n\n";
  return os.str();
}

}  // namespace masc
