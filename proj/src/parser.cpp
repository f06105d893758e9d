#include "masc/parser.hpp"

#include <cctype>
#include <map>
#include <utility>

#include "masc/lexer.hpp"

namespace masc {

namespace {

struct Bail {};  // thrown on parse error, caught at a recovery point

struct BinOpInfo {
  const char* tok;
  Expr::Op op;
  int prec;
};

const BinOpInfo kBinOps[] = {
    {"||", Expr::Op::LogOr, 1},  {"&&", Expr::Op::LogAnd, 2},
    {"|", Expr::Op::BitOr, 3},   {"^", Expr::Op::BitXor, 4},
    {"&", Expr::Op::BitAnd, 5},  {"==", Expr::Op::Eq, 6},
    {"!=", Expr::Op::Ne, 6},     {"<", Expr::Op::Lt, 7},
    {"<=", Expr::Op::Le, 7},     {">", Expr::Op::Gt, 7},
    {">=", Expr::Op::Ge, 7},     {"<<", Expr::Op::Shl, 8},
    {">>", Expr::Op::Shr, 8},    {"+", Expr::Op::Add, 9},
    {"-", Expr::Op::Sub, 9},     {"*", Expr::Op::Mul, 10},
    {"%", Expr::Op::Mod, 10},
};

// ui<N> / si<N> / uf<N>i<M> / sf<N>i<M>; null when the name does not match
// the pattern. Pattern matches with bad widths report through ok=false.
TypePtr registerTypeFromName(const std::string& s, bool& badWidths) {
  badWidths = false;
  if (s.size() < 3) return nullptr;
  bool fixed = s[1] == 'f';
  bool sign = s[0] == 's';
  if ((s[0] != 'u' && s[0] != 's') || (s[1] != 'i' && s[1] != 'f'))
    return nullptr;
  std::size_t p = 2;
  std::string nDigits, mDigits;
  while (p < s.size() && std::isdigit((unsigned char)s[p])) nDigits += s[p++];
  if (nDigits.empty()) return nullptr;
  if (fixed) {
    if (p >= s.size() || s[p] != 'i') return nullptr;
    ++p;
    while (p < s.size() && std::isdigit((unsigned char)s[p])) mDigits += s[p++];
    if (mDigits.empty()) return nullptr;
  }
  if (p != s.size()) return nullptr;
  if (nDigits.size() > 6 || mDigits.size() > 6) {
    badWidths = true;
    return nullptr;
  }
  std::int64_t n = std::stoll(nDigits);
  std::int64_t m = fixed ? std::stoll(mDigits) : 0;
  if (n < 1 || (fixed && (m < 1 || m > n))) {
    badWidths = true;
    return nullptr;
  }
  Type::K k = fixed ? (sign ? Type::K::SF : Type::K::UF)
                    : (sign ? Type::K::SI : Type::K::UI);
  return Type::reg(k, n, m);
}

struct Parser {
  std::vector<Token> toks;
  std::size_t pos = 0;
  Diagnostics& diags;
  Program prog;
  // > closes a tuple return's expression list; nonzero while parsing one.
  int tupleDepth = 0;
  std::map<std::string, TypePtr> typeNames;
  std::map<std::string, Int> constVals;  // foldable top-level constants

  explicit Parser(const std::string& source, Diagnostics& diags)
      : diags(diags) {
    toks = lex(source, diags);
  }

  const Token& cur() const { return toks[pos]; }
  const Token& ahead(std::size_t n) const {
    return toks[std::min(pos + n, toks.size() - 1)];
  }
  SrcLoc loc() const { return cur().loc; }

  [[noreturn]] void fail(SrcLoc l, const std::string& msg) {
    diags.error(l, msg);
    throw Bail{};
  }
  void next() {
    if (cur().kind != Token::K::End) ++pos;
  }
  bool accept(const char* punct) {
    if (cur().is(punct)) {
      next();
      return true;
    }
    return false;
  }
  bool acceptIdent(const char* name) {
    if (cur().isIdent(name)) {
      next();
      return true;
    }
    return false;
  }
  void expect(const char* punct) {
    if (!accept(punct))
      fail(loc(), std::string("expected '") + punct + "' before '" +
                      describe(cur()) + "'");
  }
  std::string expectIdent(const char* what) {
    if (cur().kind != Token::K::Ident)
      fail(loc(), std::string("expected ") + what + " before '" +
                      describe(cur()) + "'");
    std::string s = cur().text;
    next();
    return s;
  }
  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Token::K::End: return "end of input";
      case Token::K::IntLit: return t.value.str();
      default: return t.text;
    }
  }

  // Skip to a likely statement boundary after an error.
  void synchronizeStmt() {
    int depth = 0;
    while (cur().kind != Token::K::End) {
      if (depth == 0 && (cur().is(";") || cur().is("}"))) {
        if (cur().is(";")) next();
        return;
      }
      if (cur().is("{")) ++depth;
      if (cur().is("}")) --depth;
      next();
    }
  }
  void synchronizeTop() {
    int depth = 0;
    while (cur().kind != Token::K::End) {
      if (cur().is("{")) ++depth;
      if (cur().is("}")) {
        if (depth <= 1) {
          next();
          return;
        }
        --depth;
      }
      if (depth == 0 && cur().is(";")) {
        next();
        return;
      }
      next();
    }
  }

  // ---- types -------------------------------------------------------------

  bool isTypeName(const Token& t) const {
    if (t.kind != Token::K::Ident) return false;
    if (t.text == "bool" || t.text == "uint" || t.text == "int") return true;
    if (typeNames.count(t.text)) return true;
    bool bad;
    return registerTypeFromName(t.text, bad) != nullptr || bad;
  }
  bool startsDecl(const Token& t) const {
    return isTypeName(t) || t.isIdent("const");
  }

  TypePtr parseBaseType() {
    SrcLoc l = loc();
    std::string name = expectIdent("a type name");
    if (name == "bool") return Type::boolType();
    if (name == "uint") return Type::uintType();
    if (name == "int") return Type::intType();
    auto it = typeNames.find(name);
    if (it != typeNames.end()) return it->second;
    bool bad;
    if (TypePtr t = registerTypeFromName(name, bad)) return t;
    if (bad) fail(l, "invalid register type width in '" + name + "'");
    fail(l, "unknown type name '" + name + "'");
  }

  std::int64_t parseArraySize() {
    SrcLoc l = loc();
    ExprPtr e = parseExpr();
    Int v;
    if (!foldInt(*e, v) || v <= 0 || v > 1000000)
      fail(l, "array size must be a positive constant");
    return static_cast<std::int64_t>(v);
  }

  // Constant folding over literals, enum members, and earlier constants;
  // used for array sizes at parse time.
  bool foldInt(const Expr& e, Int& out) const {
    switch (e.kind) {
      case Expr::K::IntLit: out = e.intValue; return true;
      case Expr::K::BoolLit: out = e.boolValue ? 1 : 0; return true;
      case Expr::K::Var: {
        auto it = constVals.find(e.name);
        if (it == constVals.end()) return false;
        out = it->second;
        return true;
      }
      case Expr::K::Unary: {
        Int a;
        if (!foldInt(*e.a, a)) return false;
        if (e.op == Expr::Op::Neg) out = -a;
        else if (e.op == Expr::Op::BitNot) out = -1 - a;
        else if (e.op == Expr::Op::LogNot) out = a == 0 ? 1 : 0;
        else return false;
        return true;
      }
      case Expr::K::Binary: {
        Int a, b;
        if (!foldInt(*e.a, a) || !foldInt(*e.b, b)) return false;
        switch (e.op) {
          case Expr::Op::Add: out = a + b; return true;
          case Expr::Op::Sub: out = a - b; return true;
          case Expr::Op::Mul: out = a * b; return true;
          case Expr::Op::Mod:
            if (b <= 0) return false;
            out = floorMod(a, b);
            return true;
          case Expr::Op::Shl:
            if (b < 0 || b > 100000) return false;
            out = a << static_cast<unsigned>(b);
            return true;
          case Expr::Op::Shr:
            if (b < 0 || b > 100000) return false;
            out = floorDiv(a, pow2(static_cast<std::int64_t>(b)));
            return true;
          default: return false;
        }
      }
      default: return false;
    }
  }

  // ---- expressions -------------------------------------------------------

  ExprPtr parseExpr() {
    ExprPtr cond = parseBinary(1);
    if (accept("?")) {
      auto e = std::make_unique<Expr>();
      e->kind = Expr::K::Ternary;
      e->loc = cond->loc;
      e->a = std::move(cond);
      e->b = parseExpr();
      expect(":");
      e->c = parseExpr();
      return e;
    }
    return cond;
  }

  ExprPtr parseBinary(int minPrec) {
    ExprPtr lhs = parseUnary();
    for (;;) {
      if (tupleDepth > 0 && cur().is(">")) return lhs;
      const BinOpInfo* info = nullptr;
      if (cur().kind == Token::K::Punct)
        for (const auto& b : kBinOps)
          if (cur().text == b.tok) {
            info = &b;
            break;
          }
      if (!info || info->prec < minPrec) return lhs;
      SrcLoc l = loc();
      next();
      ExprPtr rhs = parseBinary(info->prec + 1);
      lhs = Expr::binary(l, info->op, std::move(lhs), std::move(rhs));
    }
  }

  ExprPtr parseUnary() {
    SrcLoc l = loc();
    if (accept("!"))
      return Expr::unary(l, Expr::Op::LogNot, parseUnary());
    if (accept("~"))
      return Expr::unary(l, Expr::Op::BitNot, parseUnary());
    if (accept("-"))
      return Expr::unary(l, Expr::Op::Neg, parseUnary());
    if (accept("+")) return parseUnary();
    if (cur().is("++") || cur().is("--"))
      fail(l, "increment/decrement is a statement, not an expression");
    if (cur().is("*") || cur().is("&"))
      fail(l, "pointers and references are not part of MASC");
    return parsePostfix();
  }

  ExprPtr parsePostfix() {
    ExprPtr e = parsePrimary();
    for (;;) {
      SrcLoc l = loc();
      if (accept("[")) {
        int saved = std::exchange(tupleDepth, 0);
        ExprPtr i = parseExpr();
        if (accept(":")) {
          auto sr = std::make_unique<Expr>();
          sr->kind = Expr::K::Subrange;
          sr->loc = l;
          sr->a = std::move(e);
          sr->b = std::move(i);
          sr->c = parseExpr();
          tupleDepth = saved;
          expect("]");
          e = std::move(sr);
        } else {
          tupleDepth = saved;
          expect("]");
          auto ix = std::make_unique<Expr>();
          ix->kind = Expr::K::Index;
          ix->loc = l;
          ix->a = std::move(e);
          ix->b = std::move(i);
          e = std::move(ix);
        }
      } else if (accept(".")) {
        auto f = std::make_unique<Expr>();
        f->kind = Expr::K::Field;
        f->loc = l;
        f->a = std::move(e);
        f->name = expectIdent("a field name");
        e = std::move(f);
      } else {
        return e;
      }
    }
  }

  ExprPtr parsePrimary() {
    SrcLoc l = loc();
    if (cur().kind == Token::K::IntLit) {
      Int v = cur().value;
      next();
      return Expr::intLit(l, std::move(v));
    }
    if (cur().isIdent("true") || cur().isIdent("false")) {
      auto e = std::make_unique<Expr>();
      e->kind = Expr::K::BoolLit;
      e->loc = l;
      e->boolValue = cur().isIdent("true");
      next();
      return e;
    }
    if (cur().kind == Token::K::Ident) {
      std::string name = cur().text;
      next();
      if (accept("(")) {
        auto call = std::make_unique<Expr>();
        call->kind = Expr::K::Call;
        call->loc = l;
        call->name = std::move(name);
        if (!accept(")")) {
          int saved = std::exchange(tupleDepth, 0);
          do call->args.push_back(parseExpr());
          while (accept(","));
          tupleDepth = saved;
          expect(")");
        }
        return call;
      }
      return Expr::var(l, std::move(name));
    }
    if (accept("(")) {
      int saved = std::exchange(tupleDepth, 0);
      ExprPtr e = parseExpr();
      tupleDepth = saved;
      expect(")");
      return e;
    }
    fail(l, "expected an expression before '" + describe(cur()) + "'");
  }

  // ---- statements --------------------------------------------------------

  StmtPtr parseBlock() {
    SrcLoc l = loc();
    expect("{");
    auto blk = Stmt::make(Stmt::K::Block, l);
    while (!cur().is("}") && cur().kind != Token::K::End) {
      try {
        blk->body.push_back(parseStmt());
      } catch (Bail&) {
        synchronizeStmt();
      }
    }
    expect("}");
    return blk;
  }

  StmtPtr blockOf(StmtPtr s) {
    if (s->kind == Stmt::K::Block) return s;
    auto blk = Stmt::make(Stmt::K::Block, s->loc);
    blk->body.push_back(std::move(s));
    return blk;
  }

  StmtPtr parseStmt() {
    SrcLoc l = loc();
    if (cur().is("{")) return parseBlock();
    if (acceptIdent("if")) {
      auto s = Stmt::make(Stmt::K::If, l);
      expect("(");
      s->cond = parseExpr();
      expect(")");
      s->thenS = blockOf(parseStmt());
      if (acceptIdent("else")) s->elseS = blockOf(parseStmt());
      return s;
    }
    if (cur().isIdent("for")) {
      std::string directive = cur().directive;
      SrcLoc dloc = cur().directiveLoc;
      next();
      auto s = Stmt::make(Stmt::K::For, l);
      expect("(");
      if (startsDecl(cur())) {
        s->init = parseDeclStmt(true);
      } else {
        s->init = parseAssignStmt(false);
        expect(";");
      }
      s->cond = parseExpr();
      expect(";");
      s->update = parseAssignStmt(false);
      expect(")");
      s->loopBody = blockOf(parseStmt());
      if (!directive.empty()) s->whileBound = parseDirective(directive, dloc);
      return s;
    }
    if (cur().isIdent("while")) {
      std::string directive = cur().directive;
      SrcLoc dloc = cur().directiveLoc;
      next();
      auto s = Stmt::make(Stmt::K::While, l);
      expect("(");
      s->cond = parseExpr();
      expect(")");
      s->loopBody = blockOf(parseStmt());
      if (!directive.empty()) s->whileBound = parseDirective(directive, dloc);
      return s;
    }
    if (acceptIdent("switch")) {
      auto s = Stmt::make(Stmt::K::Switch, l);
      expect("(");
      s->cond = parseExpr();
      expect(")");
      expect("{");
      while (!cur().is("}") && cur().kind != Token::K::End) {
        SwitchArm arm;
        if (!cur().isIdent("case") && !cur().isIdent("default"))
          fail(loc(), "expected 'case' or 'default' in switch body");
        while (cur().isIdent("case") || cur().isIdent("default")) {
          if (acceptIdent("default")) {
            arm.isDefault = true;
          } else {
            next();  // case
            arm.labels.push_back(parseExpr());
          }
          expect(":");
        }
        while (!cur().isIdent("case") && !cur().isIdent("default") &&
               !cur().is("}") && cur().kind != Token::K::End)
          arm.body.push_back(parseStmt());
        s->arms.push_back(std::move(arm));
      }
      expect("}");
      return s;
    }
    if (acceptIdent("assert")) {
      auto s = Stmt::make(Stmt::K::Assert, l);
      expect("(");
      s->cond = parseExpr();
      expect(")");
      expect(";");
      return s;
    }
    if (acceptIdent("return")) {
      auto s = Stmt::make(Stmt::K::Return, l);
      if (accept("<")) {
        ++tupleDepth;
        do s->retVals.push_back(parseExpr());
        while (accept(","));
        --tupleDepth;
        expect(">");
      } else {
        s->retVals.push_back(parseExpr());
      }
      expect(";");
      return s;
    }
    if (acceptIdent("break")) {
      expect(";");
      return Stmt::make(Stmt::K::Break, l);
    }
    if (cur().isIdent("continue"))
      fail(l, "'continue' is not permitted in MASC");
    if (startsDecl(cur())) return parseDeclStmt(false);
    if (cur().is("<")) {
      next();
      auto s = Stmt::make(Stmt::K::MvAssign, l);
      do s->mvTargets.push_back(parsePostfix());
      while (accept(","));
      expect(">");
      expect("=");
      s->call = parseExpr();
      if (s->call->kind != Expr::K::Call)
        fail(s->call->loc,
             "a multiple-value assignment requires a function call");
      expect(";");
      return s;
    }
    StmtPtr s = parseAssignStmt(false);
    expect(";");
    return s;
  }

  ExprPtr parseDirective(const std::string& text, SrcLoc dloc) {
    Diagnostics sub;
    ExprPtr bound = parseExpression(text, sub);
    if (!bound || sub.hasErrors()) {
      diags.error(dloc, "cannot parse directive bound expression '" + text +
                            "'");
      throw Bail{};
    }
    return bound;
  }

  // Declaration statement; forInit restricts to a single declarator and
  // consumes the trailing ';'.
  StmtPtr parseDeclStmt(bool forInit) {
    SrcLoc l = loc();
    acceptIdent("const");  // local constants parse as initialized variables
    TypePtr base = parseBaseType();
    auto s = Stmt::make(Stmt::K::Decl, l);
    do {
      Declarator d;
      d.loc = loc();
      d.name = expectIdent("a variable name");
      d.type = base;
      if (accept("[")) {
        std::int64_t size = parseArraySize();
        expect("]");
        d.type = Type::array(base, size);
      }
      if (accept("=")) d.init = parseExpr();
      s->decls.push_back(std::move(d));
    } while (!forInit && accept(","));
    expect(";");
    if (forInit && s->decls.size() != 1)
      fail(l, "loop initialization declares a single variable");
    return s;
  }

  // Assignment (or ++/--) without the trailing ';'.
  StmtPtr parseAssignStmt(bool allowEmpty) {
    SrcLoc l = loc();
    if (allowEmpty && cur().is(";")) return Stmt::make(Stmt::K::Block, l);
    bool preIncr = accept("++"), preDecr = accept("--");
    ExprPtr lhs = parsePostfix();
    auto s = Stmt::make(Stmt::K::Assign, l);
    if (preIncr || preDecr) {
      s->rhs = Expr::binary(l, preIncr ? Expr::Op::Add : Expr::Op::Sub,
                            lhs->clone(), Expr::intLit(l, 1));
      s->lhs = std::move(lhs);
      return s;
    }
    if (cur().is("++") || cur().is("--")) {
      bool inc = cur().is("++");
      next();
      s->rhs = Expr::binary(l, inc ? Expr::Op::Add : Expr::Op::Sub,
                            lhs->clone(), Expr::intLit(l, 1));
      s->lhs = std::move(lhs);
      return s;
    }
    static const std::pair<const char*, Expr::Op> kCompound[] = {
        {"+=", Expr::Op::Add},   {"-=", Expr::Op::Sub},
        {"*=", Expr::Op::Mul},   {"%=", Expr::Op::Mod},
        {"<<=", Expr::Op::Shl},  {">>=", Expr::Op::Shr},
        {"&=", Expr::Op::BitAnd}, {"|=", Expr::Op::BitOr},
        {"^=", Expr::Op::BitXor},
    };
    for (const auto& [tok, op] : kCompound)
      if (accept(tok)) {
        ExprPtr rhs = parseExpr();
        s->rhs = Expr::binary(l, op, lhs->clone(), std::move(rhs));
        s->lhs = std::move(lhs);
        return s;
      }
    expect("=");
    s->lhs = std::move(lhs);
    s->rhs = parseExpr();
    return s;
  }

  // ---- top level ---------------------------------------------------------

  void parseTop() {
    while (cur().kind != Token::K::End) {
      try {
        parseTopItem();
      } catch (Bail&) {
        synchronizeTop();
      }
    }
    if (prog.functions.empty() && prog.constants.empty() &&
        prog.typedefs.empty() && !diags.hasErrors())
      diags.error({1, 1}, "empty input: no definitions found");
  }

  void parseTopItem() {
    SrcLoc l = loc();
    if (acceptIdent("typedef")) {
      TypePtr t = parseBaseType();
      std::string name = expectIdent("a typedef name");
      expect(";");
      declareTypeName(l, name, t);
      prog.typedefs.emplace_back(name, t);
      return;
    }
    if (acceptIdent("enum")) {
      parseEnum(l);
      return;
    }
    if (acceptIdent("struct")) {
      parseStruct(l);
      return;
    }
    if (acceptIdent("const")) {
      TypePtr t = parseBaseType();
      ConstantDef c;
      c.loc = l;
      c.name = expectIdent("a constant name");
      c.type = t;
      if (accept("[")) {
        std::int64_t size = parseArraySize();
        expect("]");
        c.type = Type::array(t, size);
      }
      expect("=");
      c.init = parseExpr();
      expect(";");
      Int v;
      if (c.type->kind != Type::K::Array && foldInt(*c.init, v))
        constVals[c.name] = v;
      prog.constants.push_back(std::move(c));
      return;
    }
    // function definition
    std::vector<TypePtr> rets;
    if (accept("<")) {
      do rets.push_back(parseBaseType());
      while (accept(","));
      expect(">");
      if (rets.size() < 2 || rets.size() > 4)
        fail(l, "a multiple-value return type lists 2 to 4 types");
    } else {
      TypePtr t = parseBaseType();
      if (accept("[")) {
        std::int64_t size = parseArraySize();
        expect("]");
        t = Type::array(t, size);
      }
      rets.push_back(t);
    }
    FunctionDef fn;
    fn.loc = l;
    fn.name = expectIdent("a function name");
    fn.returnTypes = std::move(rets);
    expect("(");
    if (!accept(")")) {
      do {
        Param p;
        p.loc = loc();
        p.type = parseBaseType();
        p.name = expectIdent("a parameter name");
        if (accept("[")) {
          std::int64_t size = parseArraySize();
          expect("]");
          p.type = Type::array(p.type, size);
        }
        fn.params.push_back(std::move(p));
      } while (accept(","));
      expect(")");
    }
    fn.body = parseBlock();
    prog.functions.push_back(std::move(fn));
  }

  void declareTypeName(SrcLoc l, const std::string& name, TypePtr t) {
    bool bad;
    if (typeNames.count(name) || name == "bool" || name == "uint" ||
        name == "int" || registerTypeFromName(name, bad) || bad)
      fail(l, "type name '" + name + "' is already in use");
    typeNames[name] = std::move(t);
  }

  void parseEnum(SrcLoc l) {
    auto t = std::make_shared<Type>();
    t->kind = Type::K::Enum;
    t->name = expectIdent("an enum name");
    expect("{");
    Int nextVal = 0;
    do {
      if (cur().is("}")) break;
      SrcLoc ml = loc();
      std::string member = expectIdent("an enum member name");
      if (accept("=")) {
        ExprPtr e = parseExpr();
        Int v;
        if (!foldInt(*e, v)) fail(ml, "enum member value must be constant");
        nextVal = v;
      }
      t->members.emplace_back(member, nextVal);
      if (constVals.count(member))
        fail(ml, "enum member '" + member + "' is already defined");
      constVals[member] = nextVal;
      ConstantDef c;
      c.loc = ml;
      c.name = member;
      c.type = Type::intType();
      c.init = Expr::intLit(ml, nextVal);
      prog.constants.push_back(std::move(c));
      nextVal += 1;
    } while (accept(","));
    expect("}");
    expect(";");
    declareTypeName(l, t->name, t);
    prog.typedefs.emplace_back(t->name, t);
  }

  void parseStruct(SrcLoc l) {
    auto t = std::make_shared<Type>();
    t->kind = Type::K::Struct;
    t->name = expectIdent("a struct name");
    expect("{");
    while (!cur().is("}") && cur().kind != Token::K::End) {
      TypePtr ft = parseBaseType();
      do {
        std::string fname = expectIdent("a field name");
        if (accept("[")) {
          std::int64_t size = parseArraySize();
          expect("]");
          t->fields.emplace_back(fname, Type::array(ft, size));
        } else {
          t->fields.emplace_back(fname, ft);
        }
      } while (accept(","));
      expect(";");
    }
    expect("}");
    expect(";");
    declareTypeName(l, t->name, t);
    prog.typedefs.emplace_back(t->name, t);
  }
};

}  // namespace

Program parseProgram(const std::string& source, Diagnostics& diags) {
  Parser p(source, diags);
  p.parseTop();
  return std::move(p.prog);
}

ExprPtr parseExpression(const std::string& source, Diagnostics& diags) {
  Parser p(source, diags);
  try {
    ExprPtr e = p.parseExpr();
    if (p.cur().kind != Token::K::End)
      p.fail(p.loc(), "unexpected trailing tokens in expression");
    return e;
  } catch (Bail&) {
    return nullptr;
  }
}

}  // namespace masc
