#include "masc/emit_ast.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace masc {

namespace {

std::string upper(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return out;
}

std::int64_t fieldOrdinal(const Type& structType, const std::string& name) {
  for (std::size_t i = 0; i < structType.fields.size(); ++i)
    if (structType.fields[i].first == name)
      return static_cast<std::int64_t>(i);
  throw std::logic_error("unknown struct field in emission");
}

struct Emitter {
  const Program& prog;
  const FunctionDef& fn;
  std::set<std::string> locals;
  int tempCount = 0;

  std::string freshTemp() {
    for (;;) {
      std::string name = "_T" + std::to_string(tempCount++);
      bool clash = false;
      for (const auto& l : locals)
        if (upper(l) == name) clash = true;
      if (!clash) return name;
    }
  }

  Emitter(const Program& p, const FunctionDef& f) : prog(p), fn(f) {
    for (const auto& par : f.params) locals.insert(par.name);
    collectLocals(*f.body);
  }

  void collectLocals(const Stmt& s) {
    for (const auto& d : s.decls) locals.insert(d.name);
    for (const auto& inner : s.body) collectLocals(*inner);
    if (s.init) collectLocals(*s.init);
    if (s.thenS) collectLocals(*s.thenS);
    if (s.elseS) collectLocals(*s.elseS);
    if (s.loopBody) collectLocals(*s.loopBody);
    for (const auto& arm : s.arms)
      for (const auto& inner : arm.body) collectLocals(*inner);
  }

  // --- terms ---------------------------------------------------------------

  // The natural term for an expression: raw bits for register-typed
  // expressions, the exact value otherwise.
  SExpr core(const Expr& e) {
    switch (e.kind) {
      case Expr::K::IntLit:
        return SExpr::integer(e.intValue);
      case Expr::K::BoolLit:
        return SExpr::integer(e.boolValue ? 1 : 0);
      case Expr::K::Var: {
        if (locals.count(e.name)) return SExpr::symbol(upper(e.name));
        // constant reference: fold to its value (raw bits for registers)
        const ConstantDef* c = prog.findConstant(e.name);
        if (c && c->folded) {
          if (c->value.isRegister()) return SExpr::integer(c->value.reg().raw);
          if (c->value.isIntegral()) return SExpr::integer(c->value.integer());
        }
        if (e.hasConstValue) return SExpr::integer(e.constValue);
        return SExpr::symbol(upper(e.name));
      }
      case Expr::K::Unary:
        if (e.op == Expr::Op::Neg) {
          if (e.hasConstValue) return SExpr::integer(e.constValue);
          return SExpr::make("-", num(*e.a));
        }
        if (e.op == Expr::Op::LogNot)
          return SExpr::make("LOGNOT1", num(*e.a));
        // BitNot
        if (e.a->type->isRegister()) {
          std::int64_t n = e.a->type->width;
          return SExpr::make("BITS", SExpr::make("LOGNOT", raw(*e.a)), n - 1,
                             std::int64_t{0});
        }
        return SExpr::make("LOGNOT1", num(*e.a));
      case Expr::K::Binary: {
        using Op = Expr::Op;
        switch (e.op) {
          case Op::Add: return SExpr::make("+", num(*e.a), num(*e.b));
          case Op::Sub: return SExpr::make("-", num(*e.a), num(*e.b));
          case Op::Mul: return SExpr::make("*", num(*e.a), num(*e.b));
          case Op::Mod: return SExpr::make("MOD", num(*e.a), num(*e.b));
          case Op::Shl:
            return SExpr::make("*", num(*e.a),
                               SExpr::make("EXPT", 2, num(*e.b)));
          case Op::Shr:
            return SExpr::make(
                "FL", SExpr::make("/", num(*e.a),
                                  SExpr::make("EXPT", 2, num(*e.b))));
          case Op::BitAnd: return SExpr::make("LOGAND", raw(*e.a), raw(*e.b));
          case Op::BitOr: return SExpr::make("LOGIOR", raw(*e.a), raw(*e.b));
          case Op::BitXor: return SExpr::make("LOGXOR", raw(*e.a), raw(*e.b));
          case Op::LogAnd:
            return SExpr::make("LOGAND1", num(*e.a), num(*e.b));
          case Op::LogOr:
            return SExpr::make("LOGIOR1", num(*e.a), num(*e.b));
          case Op::Lt: return SExpr::make("LOG<", num(*e.a), num(*e.b));
          case Op::Le: return SExpr::make("LOG<=", num(*e.a), num(*e.b));
          case Op::Gt: return SExpr::make("LOG>", num(*e.a), num(*e.b));
          case Op::Ge: return SExpr::make("LOG>=", num(*e.a), num(*e.b));
          case Op::Eq: return SExpr::make("LOG=", num(*e.a), num(*e.b));
          case Op::Ne: return SExpr::make("LOG<>", num(*e.a), num(*e.b));
          default: break;
        }
        throw std::logic_error("bad binary operator in emission");
      }
      case Expr::K::Ternary:
        if (e.type->isRegister())
          return SExpr::make("IF1", num(*e.a), core(*e.b), core(*e.c));
        return SExpr::make("IF1", num(*e.a), num(*e.b), num(*e.c));
      case Expr::K::Index:
        if (e.isBitRef)
          return SExpr::make("BITN", raw(*e.a), num(*e.b));
        return SExpr::make("AG", num(*e.b), core(*e.a));
      case Expr::K::Subrange:
        return SExpr::make("BITS", raw(*e.a), num(*e.b), num(*e.c));
      case Expr::K::Field:
        return SExpr::make("AG", fieldOrdinal(*e.a->type, e.name),
                           core(*e.a));
      case Expr::K::Call: {
        const FunctionDef* callee = prog.findFunction(e.name);
        if (!callee) throw std::logic_error("unknown callee in emission");
        std::vector<SExpr> items;
        items.push_back(SExpr::symbol(upper(e.name)));
        for (std::size_t i = 0; i < e.args.size(); ++i)
          items.push_back(wrapForType(*e.args[i], callee->params[i].type));
        return SExpr::list(std::move(items));
      }
    }
    throw std::logic_error("bad expression in emission");
  }

  // Raw-bits term (bitwise operands, subrange bases, bit sources).
  SExpr raw(const Expr& e) { return core(e); }

  // Interpreted-value term: signed registers via INTVAL, fixed-point via
  // division by the scale factor.
  SExpr num(const Expr& e) {
    SExpr c = core(e);
    if (!e.type || !e.type->isRegister()) return c;
    RegisterFormat f = e.type->regFormat();
    SExpr v = f.isSigned() ? SExpr::make("INTVAL", f.width, std::move(c))
                           : std::move(c);
    if (f.fracBits() > 0)
      v = SExpr::make("/", std::move(v),
                      SExpr::make("EXPT", 2, f.fracBits()));
    return v;
  }

  // Truncation-on-assignment: wrap a source term for storage into type t.
  SExpr wrapForType(const Expr& e, const TypePtr& t) {
    switch (t->kind) {
      case Type::K::Bool:
        if (e.boolish) return num(e);
        return SExpr::make("IF1", num(e), 1, 0);
      case Type::K::UInt:
      case Type::K::Int:
      case Type::K::Enum: {
        SExpr v = num(e);
        return e.integral ? v : SExpr::make("FL", std::move(v));
      }
      case Type::K::UI:
      case Type::K::SI:
      case Type::K::UF:
      case Type::K::SF: {
        if (e.type && Type::same(e.type, t)) return core(e);
        RegisterFormat f = t->regFormat();
        SExpr v = num(e);
        if (f.fracBits() > 0)
          v = SExpr::make("*", std::move(v),
                          SExpr::make("EXPT", 2, f.fracBits()));
        if (!e.integral) v = SExpr::make("FL", std::move(v));
        return SExpr::make("BITS", std::move(v), f.width - 1,
                           std::int64_t{0});
      }
      default:
        return core(e);
    }
  }

  // --- statements ----------------------------------------------------------

  SExpr declTerm(const Declarator& d) {
    if (d.type->kind == Type::K::Array || d.type->kind == Type::K::Struct) {
      if (!d.init) return SExpr::make("ARRAY", upper(d.name));
      // An initialized array declares the name, then assigns the value.
      return SExpr::make("LIST", SExpr::make("ARRAY", upper(d.name)),
                         SExpr::make("ASSIGN", upper(d.name), core(*d.init)));
    }
    if (!d.init) return SExpr::make("DECLARE", upper(d.name));
    return SExpr::make("DECLARE", upper(d.name), wrapForType(*d.init, d.type));
  }

  // Reduce an lvalue path to its root variable plus the updated-value term.
  std::pair<std::string, SExpr> update(const Expr& lhs, SExpr value) {
    switch (lhs.kind) {
      case Expr::K::Var:
        return {upper(lhs.name), std::move(value)};
      case Expr::K::Index:
        if (lhs.isBitRef) {
          std::int64_t n = lhs.a->type->width;
          return update(*lhs.a, SExpr::make("SETBITN", core(*lhs.a), n,
                                            num(*lhs.b), std::move(value)));
        }
        return update(*lhs.a, SExpr::make("AS", num(*lhs.b), std::move(value),
                                          core(*lhs.a)));
      case Expr::K::Subrange: {
        std::int64_t n = lhs.a->type->width;
        return update(*lhs.a,
                      SExpr::make("SETBITS", core(*lhs.a), n, num(*lhs.b),
                                  num(*lhs.c), std::move(value)));
      }
      case Expr::K::Field:
        return update(*lhs.a,
                      SExpr::make("AS", fieldOrdinal(*lhs.a->type, lhs.name),
                                  std::move(value), core(*lhs.a)));
      default:
        throw std::logic_error("bad lvalue in emission");
    }
  }

  SExpr assignStmt(const Expr& lhs, const Expr& rhs) {
    SExpr value;
    if (lhs.kind == Expr::K::Subrange ||
        (lhs.kind == Expr::K::Index && lhs.isBitRef))
      value = raw(rhs);
    else
      value = wrapForType(rhs, lhs.type);
    auto [root, term] = update(lhs, std::move(value));
    return SExpr::make("ASSIGN", root, std::move(term));
  }

  SExpr stmt(const Stmt& s) {
    switch (s.kind) {
      case Stmt::K::Block: {
        std::vector<SExpr> items;
        items.push_back(SExpr::symbol("BLOCK"));
        for (const auto& inner : s.body) items.push_back(stmt(*inner));
        return SExpr::list(std::move(items));
      }
      case Stmt::K::Decl: {
        if (s.decls.size() == 1) return declTerm(s.decls[0]);
        std::vector<SExpr> items;
        items.push_back(SExpr::symbol("LIST"));
        for (const auto& d : s.decls) items.push_back(declTerm(d));
        return SExpr::list(std::move(items));
      }
      case Stmt::K::Assign:
        return assignStmt(*s.lhs, *s.rhs);
      case Stmt::K::MvAssign: {
        // Non-variable targets (array elements, bit ranges, fields) receive
        // their value through a fresh temporary bound in a local block.
        std::vector<SExpr> vars;
        std::vector<SExpr> decls;
        std::vector<std::pair<const Expr*, std::string>> fixups;
        for (const auto& t : s.mvTargets) {
          if (t->kind == Expr::K::Var) {
            vars.push_back(SExpr::symbol(upper(t->name)));
          } else {
            std::string tmp = freshTemp();
            decls.push_back(SExpr::make("DECLARE", tmp));
            vars.push_back(SExpr::symbol(tmp));
            fixups.emplace_back(t.get(), tmp);
          }
        }
        SExpr mv = SExpr::make("MV-ASSIGN", SExpr::list(std::move(vars)),
                               core(*s.call));
        if (fixups.empty()) return mv;
        std::vector<SExpr> block;
        block.push_back(SExpr::symbol("BLOCK"));
        for (auto& d : decls) block.push_back(std::move(d));
        block.push_back(std::move(mv));
        for (const auto& [t, tmp] : fixups) {
          auto [root, term] = update(*t, SExpr::symbol(tmp));
          block.push_back(SExpr::make("ASSIGN", root, std::move(term)));
        }
        return SExpr::list(std::move(block));
      }
      case Stmt::K::If: {
        SExpr elseS = s.elseS ? stmt(*s.elseS) : SExpr();  // NIL
        return SExpr::make("IF", num(*s.cond), stmt(*s.thenS),
                           std::move(elseS));
      }
      case Stmt::K::For:
        return SExpr::make(
            "FOR",
            SExpr::make(stmt(*s.init), num(*s.cond), stmt(*s.update)),
            stmt(*s.loopBody));
      case Stmt::K::While:
        throw std::logic_error("while must be rewritten before emission");
      case Stmt::K::Switch: {
        std::vector<SExpr> items;
        items.push_back(SExpr::symbol("SWITCH"));
        items.push_back(raw(*s.cond));
        for (const auto& arm : s.arms) {
          std::vector<SExpr> armItems;
          if (arm.isDefault) {
            armItems.push_back(SExpr::symbol("T"));
          } else if (arm.labelValues.size() == 1) {
            armItems.push_back(SExpr::integer(arm.labelValues[0]));
          } else {
            std::vector<SExpr> labs;
            for (const auto& v : arm.labelValues)
              labs.push_back(SExpr::integer(v));
            armItems.push_back(SExpr::list(std::move(labs)));
          }
          for (const auto& inner : arm.body) {
            if (inner->kind == Stmt::K::Break) continue;
            armItems.push_back(stmt(*inner));
          }
          items.push_back(SExpr::list(std::move(armItems)));
        }
        return SExpr::list(std::move(items));
      }
      case Stmt::K::Assert:
        return SExpr::make("ASSERT", upper(fn.name), num(*s.cond));
      case Stmt::K::Return: {
        if (s.retVals.size() == 1)
          return SExpr::make("RETURN",
                             wrapForType(*s.retVals[0], fn.returnTypes[0]));
        std::vector<SExpr> items;
        items.push_back(SExpr::symbol("MV"));
        for (std::size_t i = 0; i < s.retVals.size(); ++i)
          items.push_back(wrapForType(*s.retVals[i], fn.returnTypes[i]));
        return SExpr::make("RETURN", SExpr::list(std::move(items)));
      }
      case Stmt::K::Break:
        throw std::logic_error("stray break in emission");
    }
    throw std::logic_error("bad statement in emission");
  }

  SExpr defunc() {
    std::vector<SExpr> params;
    for (const auto& p : fn.params) params.push_back(SExpr::symbol(upper(p.name)));
    return SExpr::make("DEFUNC", upper(fn.name), SExpr::list(std::move(params)),
                       stmt(*fn.body));
  }
};

}  // namespace

SExpr emitFunctionSexpr(const Program& p, const FunctionDef& fn) {
  if (!p.checked)
    throw std::logic_error("emission requires a checked program");
  return Emitter(p, fn).defunc();
}

SExpr emitAstSexpr(const Program& p) {
  std::vector<SExpr> items;
  for (const auto& fn : p.functions)
    items.push_back(emitFunctionSexpr(p, fn));
  return SExpr::list(std::move(items));
}

}  // namespace masc
