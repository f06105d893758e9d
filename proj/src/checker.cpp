#include "masc/checker.hpp"

#include <map>
#include <set>

namespace masc {

namespace {

bool isNumericType(const TypePtr& t) {
  switch (t->kind) {
    case Type::K::Bool:
    case Type::K::UInt:
    case Type::K::Int:
    case Type::K::UI:
    case Type::K::SI:
    case Type::K::UF:
    case Type::K::SF:
    case Type::K::Enum:
    case Type::K::Numeric:
      return true;
    default:
      return false;
  }
}

bool isIntegralType(const TypePtr& t) {
  switch (t->kind) {
    case Type::K::Bool:
    case Type::K::UInt:
    case Type::K::Int:
    case Type::K::UI:
    case Type::K::SI:
    case Type::K::Enum:
      return true;
    case Type::K::UF:
    case Type::K::SF:
      return t->width == t->intBits;
    default:
      return false;
  }
}

bool containsReturn(const Stmt& s) {
  if (s.kind == Stmt::K::Return) return true;
  auto any = [](const std::vector<StmtPtr>& v) {
    for (const auto& x : v)
      if (containsReturn(*x)) return true;
    return false;
  };
  switch (s.kind) {
    case Stmt::K::Block: return any(s.body);
    case Stmt::K::If:
      return containsReturn(*s.thenS) || (s.elseS && containsReturn(*s.elseS));
    case Stmt::K::For:
    case Stmt::K::While:
      return containsReturn(*s.loopBody);
    case Stmt::K::Switch:
      for (const auto& arm : s.arms)
        if (any(arm.body)) return true;
      return false;
    default:
      return false;
  }
}

// The three-clause definition of well-formedness with respect to returns.
bool wellFormedBlock(const Stmt& blk) {
  if (blk.kind != Stmt::K::Block || blk.body.empty()) return false;
  for (std::size_t i = 0; i + 1 < blk.body.size(); ++i)
    if (containsReturn(*blk.body[i])) return false;
  const Stmt& last = *blk.body.back();
  if (last.kind == Stmt::K::Return) return true;
  if (last.kind == Stmt::K::If && last.elseS)
    return wellFormedBlock(*last.thenS) && wellFormedBlock(*last.elseS);
  return false;
}

void collectAssigned(const Stmt& s, std::vector<std::string>& out) {
  auto base = [&](const Expr* e) {
    while (e && e->kind != Expr::K::Var) e = e->a.get();
    if (e) out.push_back(e->name);
  };
  switch (s.kind) {
    case Stmt::K::Block:
      for (const auto& x : s.body) collectAssigned(*x, out);
      break;
    case Stmt::K::Decl:
      for (const auto& d : s.decls) out.push_back(d.name);
      break;
    case Stmt::K::Assign: base(s.lhs.get()); break;
    case Stmt::K::MvAssign:
      for (const auto& t : s.mvTargets) base(t.get());
      break;
    case Stmt::K::If:
      collectAssigned(*s.thenS, out);
      if (s.elseS) collectAssigned(*s.elseS, out);
      break;
    case Stmt::K::For:
      if (s.init) collectAssigned(*s.init, out);
      if (s.update) collectAssigned(*s.update, out);
      collectAssigned(*s.loopBody, out);
      break;
    case Stmt::K::While:
      collectAssigned(*s.loopBody, out);
      break;
    case Stmt::K::Switch:
      for (const auto& arm : s.arms)
        for (const auto& x : arm.body) collectAssigned(*x, out);
      break;
    default:
      break;
  }
}

struct Checker {
  Program& prog;
  Diagnostics& diags;

  std::map<std::string, const ConstantDef*> constants;
  std::map<std::string, const FunctionDef*> functions;
  std::set<std::string> reservedNames;  // type names etc.

  struct VarInfo {
    TypePtr type;
    SrcLoc loc;
  };
  std::vector<std::map<std::string, VarInfo>> scopes;
  std::set<std::string>* state = nullptr;  // definitely-assigned set
  const FunctionDef* curFn = nullptr;

  Checker(Program& p, Diagnostics& d) : prog(p), diags(d) {}

  void error(SrcLoc l, const std::string& m) { diags.error(l, m); }

  const VarInfo* lookupVar(const std::string& name) const {
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return &f->second;
    }
    return nullptr;
  }

  bool nameTaken(const std::string& name) const {
    return lookupVar(name) || constants.count(name) || functions.count(name) ||
           reservedNames.count(name);
  }

  void declareVar(SrcLoc l, const std::string& name, TypePtr t) {
    if (nameTaken(name)) {
      error(l, "'" + name + "' shadows or redefines an existing name");
      return;
    }
    scopes.back()[name] = {std::move(t), l};
  }

  // ---- expressions -------------------------------------------------------

  static void fold2(Expr& e) {
    if (!e.a->hasConstValue || !e.b->hasConstValue) return;
    const Int& a = e.a->constValue;
    const Int& b = e.b->constValue;
    switch (e.op) {
      case Expr::Op::Add: e.constValue = a + b; break;
      case Expr::Op::Sub: e.constValue = a - b; break;
      case Expr::Op::Mul: e.constValue = a * b; break;
      case Expr::Op::Mod:
        if (b <= 0) return;
        e.constValue = floorMod(a, b);
        break;
      case Expr::Op::Shl:
        if (b < 0 || b > 100000) return;
        e.constValue = a << static_cast<unsigned>(b);
        break;
      case Expr::Op::Shr:
        if (b < 0 || b > 100000) return;
        e.constValue = floorDiv(a, pow2(static_cast<std::int64_t>(b)));
        break;
      case Expr::Op::Lt: e.constValue = a < b; break;
      case Expr::Op::Le: e.constValue = a <= b; break;
      case Expr::Op::Gt: e.constValue = a > b; break;
      case Expr::Op::Ge: e.constValue = a >= b; break;
      case Expr::Op::Eq: e.constValue = a == b; break;
      case Expr::Op::Ne: e.constValue = a != b; break;
      default: return;
    }
    e.hasConstValue = true;
  }

  void requireNumeric(const Expr& e, const char* what) {
    if (!isNumericType(e.type))
      error(e.loc, std::string(what) + " requires a numeric operand, got " +
                       e.type->str());
  }
  void requireIntegral(const Expr& e, const char* what) {
    requireNumeric(e, what);
    if (isNumericType(e.type) && !e.integral)
      error(e.loc,
            std::string(what) + " requires an integer operand");
  }
  // Raw-value contexts (bitwise operands, bit-assignment sources): any
  // register supplies its raw bits; otherwise the value must be integral.
  void requireRaw(const Expr& e, const char* what) {
    if (e.type->isRegister()) return;
    requireIntegral(e, what);
  }

  void checkExpr(Expr& e) {
    switch (e.kind) {
      case Expr::K::IntLit:
        e.type = Type::numericType();
        e.integral = true;
        e.boolish = e.intValue == 0 || e.intValue == 1;
        e.constValue = e.intValue;
        e.hasConstValue = true;
        return;
      case Expr::K::BoolLit:
        e.type = Type::boolType();
        e.integral = e.boolish = true;
        e.constValue = e.boolValue ? 1 : 0;
        e.hasConstValue = true;
        return;
      case Expr::K::Var: {
        if (const VarInfo* v = lookupVar(e.name)) {
          e.type = v->type;
          e.integral = isIntegralType(v->type);
          e.boolish = v->type->kind == Type::K::Bool;
          if (v->type->isScalar() && state && !state->count(e.name))
            error(e.loc, "'" + e.name + "' may be read before it is assigned");
          return;
        }
        auto c = constants.find(e.name);
        if (c != constants.end()) {
          e.type = c->second->type;
          e.integral = isIntegralType(e.type);
          e.boolish = e.type->kind == Type::K::Bool;
          if (c->second->folded && c->second->value.isIntegral()) {
            e.constValue = c->second->value.integer();
            e.hasConstValue = true;
            if (e.constValue == 0 || e.constValue == 1) e.boolish = true;
          }
          return;
        }
        error(e.loc, "use of undeclared name '" + e.name + "'");
        e.type = Type::numericType();
        e.integral = true;
        return;
      }
      case Expr::K::Unary:
        checkExpr(*e.a);
        if (e.op == Expr::Op::Neg) {
          requireNumeric(*e.a, "unary '-'");
          e.type = Type::numericType();
          e.integral = e.a->integral;
          if (e.a->hasConstValue) {
            e.constValue = -e.a->constValue;
            e.hasConstValue = true;
          }
        } else if (e.op == Expr::Op::LogNot) {
          requireNumeric(*e.a, "'!'");
          e.type = Type::boolType();
          e.integral = e.boolish = true;
          if (e.a->hasConstValue) {
            e.constValue = e.a->constValue == 0 ? 1 : 0;
            e.hasConstValue = true;
          }
        } else {  // BitNot
          if (e.a->type->isRegister()) {
            e.type = Type::reg(Type::K::UI, e.a->type->width);
          } else if (e.a->boolish) {
            e.type = Type::boolType();
            e.boolish = true;
          } else {
            error(e.loc, "'~' applies only to registers");
            e.type = Type::numericType();
          }
          e.integral = true;
        }
        return;
      case Expr::K::Binary: {
        checkExpr(*e.a);
        checkExpr(*e.b);
        using Op = Expr::Op;
        switch (e.op) {
          case Op::Add:
          case Op::Sub:
          case Op::Mul:
            requireNumeric(*e.a, "arithmetic");
            requireNumeric(*e.b, "arithmetic");
            e.type = Type::numericType();
            e.integral = e.a->integral && e.b->integral;
            break;
          case Op::Mod:
            requireIntegral(*e.a, "'%'");
            requireIntegral(*e.b, "'%'");
            e.type = Type::numericType();
            e.integral = true;
            break;
          case Op::Shl:
            requireNumeric(*e.a, "'<<'");
            requireIntegral(*e.b, "shift amount");
            e.type = Type::numericType();
            e.integral = e.a->integral;
            break;
          case Op::Shr:
            requireNumeric(*e.a, "'>>'");
            requireIntegral(*e.b, "shift amount");
            e.type = Type::numericType();
            e.integral = true;  // floor division
            break;
          case Op::BitAnd:
          case Op::BitOr:
          case Op::BitXor:
            requireRaw(*e.a, "bitwise operator");
            requireRaw(*e.b, "bitwise operator");
            e.type = Type::numericType();
            e.integral = true;
            e.boolish = e.a->boolish && e.b->boolish;
            break;
          case Op::LogAnd:
          case Op::LogOr:
            requireNumeric(*e.a, "logical operator");
            requireNumeric(*e.b, "logical operator");
            e.type = Type::boolType();
            e.integral = e.boolish = true;
            break;
          default:  // comparisons
            requireNumeric(*e.a, "comparison");
            requireNumeric(*e.b, "comparison");
            e.type = Type::boolType();
            e.integral = e.boolish = true;
            break;
        }
        fold2(e);
        return;
      }
      case Expr::K::Ternary:
        checkExpr(*e.a);
        checkExpr(*e.b);
        checkExpr(*e.c);
        requireNumeric(*e.a, "'?:' condition");
        if (isNumericType(e.b->type) && isNumericType(e.c->type)) {
          e.type = Type::same(e.b->type, e.c->type) ? e.b->type
                                                    : Type::numericType();
          e.integral = e.b->integral && e.c->integral;
          e.boolish = e.b->boolish && e.c->boolish;
        } else if (Type::same(e.b->type, e.c->type)) {
          e.type = e.b->type;
        } else {
          error(e.loc, "'?:' branches have incompatible types");
          e.type = Type::numericType();
        }
        return;
      case Expr::K::Index:
        checkExpr(*e.a);
        checkExpr(*e.b);
        requireIntegral(*e.b, "index");
        if (e.a->type->kind == Type::K::Array) {
          e.type = e.a->type->elem;
          e.integral = isIntegralType(e.type);
          e.boolish = e.type->kind == Type::K::Bool;
        } else if (e.a->type->isRegister()) {
          e.isBitRef = true;
          e.type = Type::boolType();
          e.integral = e.boolish = true;
        } else {
          error(e.loc, "'[]' applies to arrays and registers only");
          e.type = Type::numericType();
          e.integral = true;
        }
        return;
      case Expr::K::Subrange:
        checkExpr(*e.a);
        checkExpr(*e.b);
        checkExpr(*e.c);
        if (!e.a->type->isRegister())
          error(e.loc, "a bit subrange applies to registers only");
        requireIntegral(*e.b, "subrange index");
        requireIntegral(*e.c, "subrange index");
        e.type = Type::uintType();
        e.integral = true;
        return;
      case Expr::K::Field: {
        checkExpr(*e.a);
        if (e.a->type->kind != Type::K::Struct) {
          error(e.loc, "'.' applies to struct values only");
          e.type = Type::numericType();
          e.integral = true;
          return;
        }
        for (const auto& [fname, ftype] : e.a->type->fields)
          if (fname == e.name) {
            e.type = ftype;
            e.integral = isIntegralType(ftype);
            e.boolish = ftype->kind == Type::K::Bool;
            return;
          }
        error(e.loc, "struct " + e.a->type->name + " has no field '" +
                         e.name + "'");
        e.type = Type::numericType();
        e.integral = true;
        return;
      }
      case Expr::K::Call: {
        for (auto& arg : e.args) checkExpr(*arg);
        auto f = functions.find(e.name);
        if (f == functions.end()) {
          error(e.loc, "call to unknown or not-yet-defined function '" +
                           e.name + "'");
          e.type = Type::numericType();
          e.integral = true;
          return;
        }
        const FunctionDef& fn = *f->second;
        if (e.args.size() != fn.params.size()) {
          error(e.loc, "'" + e.name + "' expects " +
                           std::to_string(fn.params.size()) + " arguments");
        } else {
          for (std::size_t i = 0; i < e.args.size(); ++i)
            checkAssignable(*e.args[i], fn.params[i].type,
                            "argument " + std::to_string(i + 1) + " of '" +
                                e.name + "'");
        }
        if (fn.returnTypes.size() == 1) {
          e.type = fn.returnTypes[0];
          e.integral = isIntegralType(e.type);
          e.boolish = e.type->kind == Type::K::Bool;
        } else {
          e.type = Type::tuple(fn.returnTypes);
        }
        return;
      }
    }
  }

  // Value of type src assignable to a variable of type target (with the
  // truncation conversions of assignment)?
  void checkAssignable(const Expr& e, const TypePtr& target,
                       const std::string& what) {
    if (isNumericType(target)) {
      if (!isNumericType(e.type))
        error(e.loc, what + ": expected a numeric value, got " +
                         e.type->str());
      return;
    }
    if (!Type::same(e.type, target))
      error(e.loc, what + ": expected " + target->str() + ", got " +
                       e.type->str());
  }

  // ---- lvalues -----------------------------------------------------------

  // Resolve an assignment target; returns its type and marks definite
  // assignment. kind: 0 plain, 1 bit/subrange write.
  TypePtr checkLValue(Expr& e, bool& isPartial) {
    isPartial = false;
    switch (e.kind) {
      case Expr::K::Var: {
        const VarInfo* v = lookupVar(e.name);
        if (!v) {
          error(e.loc, "assignment to undeclared variable '" + e.name + "'");
          return Type::numericType();
        }
        e.type = v->type;
        if (state) state->insert(e.name);
        return v->type;
      }
      case Expr::K::Index: {
        // distinguish array element from bit reference via the base type
        TypePtr baseT = lvalueBaseType(*e.a);
        checkExpr(*e.b);
        requireIntegral(*e.b, "index");
        if (baseT->kind == Type::K::Array) {
          e.type = baseT->elem;
          return baseT->elem;
        }
        if (baseT->isRegister()) {
          e.isBitRef = true;
          isPartial = true;
          requireBaseAssigned(*e.a);
          e.type = Type::boolType();
          return Type::boolType();
        }
        error(e.loc, "'[]' assignment applies to arrays and registers only");
        return Type::numericType();
      }
      case Expr::K::Subrange: {
        TypePtr baseT = lvalueBaseType(*e.a);
        checkExpr(*e.b);
        checkExpr(*e.c);
        requireIntegral(*e.b, "subrange index");
        requireIntegral(*e.c, "subrange index");
        if (!baseT->isRegister())
          error(e.loc, "a subrange assignment applies to registers only");
        isPartial = true;
        requireBaseAssigned(*e.a);
        e.type = Type::uintType();
        return Type::uintType();
      }
      case Expr::K::Field: {
        TypePtr baseT = lvalueBaseType(*e.a);
        if (baseT->kind != Type::K::Struct) {
          error(e.loc, "'.' assignment applies to struct values only");
          return Type::numericType();
        }
        for (const auto& [fname, ftype] : baseT->fields)
          if (fname == e.name) {
            e.type = ftype;
            return ftype;
          }
        error(e.loc, "struct " + baseT->name + " has no field '" + e.name +
                         "'");
        return Type::numericType();
      }
      default:
        error(e.loc, "expression is not assignable");
        return Type::numericType();
    }
  }

  // Type of the base path of an lvalue (a variable, array element, or
  // struct field), checking inner indices.
  TypePtr lvalueBaseType(Expr& e) {
    switch (e.kind) {
      case Expr::K::Var: {
        const VarInfo* v = lookupVar(e.name);
        if (!v) {
          error(e.loc, "assignment to undeclared variable '" + e.name + "'");
          return Type::numericType();
        }
        e.type = v->type;
        if (state) state->insert(e.name);
        return v->type;
      }
      case Expr::K::Index: {
        TypePtr baseT = lvalueBaseType(*e.a);
        checkExpr(*e.b);
        requireIntegral(*e.b, "index");
        if (baseT->kind != Type::K::Array) {
          error(e.loc, "'[]' applies to an array here");
          return Type::numericType();
        }
        e.type = baseT->elem;
        return baseT->elem;
      }
      case Expr::K::Field: {
        TypePtr baseT = lvalueBaseType(*e.a);
        if (baseT->kind != Type::K::Struct) {
          error(e.loc, "'.' applies to struct values only");
          return Type::numericType();
        }
        for (const auto& [fname, ftype] : baseT->fields)
          if (fname == e.name) {
            e.type = ftype;
            return ftype;
          }
        error(e.loc, "struct " + baseT->name + " has no field '" + e.name +
                         "'");
        return Type::numericType();
      }
      default:
        error(e.loc, "expression is not assignable");
        return Type::numericType();
    }
  }

  // A partial (bit/subrange) write reads the old value.
  void requireBaseAssigned(const Expr& e) {
    const Expr* base = &e;
    while (base->kind != Expr::K::Var && base->a) base = base->a.get();
    if (base->kind == Expr::K::Var && base->type && base->type->isScalar() &&
        state && !state->count(base->name))
      error(e.loc, "'" + base->name +
                       "' is partially written before it is assigned");
  }

  // ---- statements --------------------------------------------------------

  // Returns false when control cannot continue past the statement.
  bool checkStmt(Stmt& s, bool inLoop, bool breakAllowed) {
    switch (s.kind) {
      case Stmt::K::Block: {
        scopes.emplace_back();
        bool live = true;
        for (std::size_t i = 0; i < s.body.size(); ++i) {
          if (!live)
            diags.warning(s.body[i]->loc, "unreachable statement");
          bool c = checkStmt(*s.body[i], inLoop,
                             breakAllowed && i + 1 == s.body.size());
          live = live && c;
        }
        scopes.pop_back();
        return live;
      }
      case Stmt::K::Decl: {
        for (auto& d : s.decls) {
          if (d.init) {
            checkExpr(*d.init);
            checkAssignable(*d.init, d.type,
                            "initializer of '" + d.name + "'");
          }
          declareVar(d.loc, d.name, d.type);
          if (d.init || !d.type->isScalar())
            if (state) state->insert(d.name);
        }
        return true;
      }
      case Stmt::K::Assign: {
        checkExpr(*s.rhs);
        bool partial = false;
        TypePtr target = checkLValue(*s.lhs, partial);
        if (partial)
          requireRaw(*s.rhs, "bit assignment");
        else
          checkAssignable(*s.rhs, target, "assignment");
        return true;
      }
      case Stmt::K::MvAssign: {
        checkExpr(*s.call);
        if (s.call->type->kind != Type::K::Tuple) {
          error(s.call->loc,
                "a multiple-value assignment requires a multiple-valued "
                "function");
          return true;
        }
        const auto& types = s.call->type->tupleTypes;
        if (types.size() != s.mvTargets.size()) {
          error(s.loc, "multiple-value assignment arity mismatch: " +
                           std::to_string(s.mvTargets.size()) + " targets, " +
                           std::to_string(types.size()) + " values");
          return true;
        }
        for (std::size_t i = 0; i < types.size(); ++i) {
          bool partial = false;
          TypePtr target = checkLValue(*s.mvTargets[i], partial);
          if (partial) {
            error(s.mvTargets[i]->loc,
                  "a multiple-value target cannot be a bit selection");
            continue;
          }
          if (!Type::same(target, types[i]))
            error(s.mvTargets[i]->loc,
                  "multiple-value target type " + target->str() +
                      " does not match returned " + types[i]->str());
        }
        return true;
      }
      case Stmt::K::If: {
        checkExpr(*s.cond);
        requireNumeric(*s.cond, "'if' condition");
        std::set<std::string> thenState = *state;
        std::set<std::string> elseState = *state;
        std::set<std::string>* saved = state;
        state = &thenState;
        bool thenLive = checkStmt(*s.thenS, inLoop, false);
        bool elseLive = true;
        if (s.elseS) {
          state = &elseState;
          elseLive = checkStmt(*s.elseS, inLoop, false);
        }
        state = saved;
        if (thenLive && (!s.elseS || elseLive)) {
          if (s.elseS) {
            for (const auto& n : thenState)
              if (elseState.count(n)) state->insert(n);
          }
          // without else, only the pre-state survives
        } else if (thenLive) {
          *state = thenState;
        } else if (s.elseS && elseLive) {
          *state = elseState;
        }
        return thenLive || !s.elseS || elseLive;
      }
      case Stmt::K::For:
        return checkFor(s);
      case Stmt::K::While:
        return checkWhile(s);
      case Stmt::K::Switch:
        return checkSwitch(s, inLoop);
      case Stmt::K::Assert: {
        checkExpr(*s.cond);
        requireNumeric(*s.cond, "'assert'");
        // assert(false) never completes
        return !(s.cond->hasConstValue && s.cond->constValue == 0);
      }
      case Stmt::K::Return: {
        if (!curFn) return false;
        if (s.retVals.size() != curFn->returnTypes.size()) {
          error(s.loc, "'" + curFn->name + "' returns " +
                           std::to_string(curFn->returnTypes.size()) +
                           " values, not " +
                           std::to_string(s.retVals.size()));
        } else {
          for (std::size_t i = 0; i < s.retVals.size(); ++i) {
            checkExpr(*s.retVals[i]);
            checkAssignable(*s.retVals[i], curFn->returnTypes[i],
                            "return value");
          }
        }
        if (inLoop)
          error(s.loc, "'return' may not occur inside a loop body");
        return false;
      }
      case Stmt::K::Break:
        if (!breakAllowed)
          error(s.loc,
                "'break' may appear only as the final statement of a "
                "switch arm");
        return false;
    }
    return true;
  }

  bool checkFor(Stmt& s) {
    scopes.emplace_back();
    std::string loopVar;
    TypePtr loopVarType;
    // init
    if (s.init->kind == Stmt::K::Decl) {
      const Declarator& d = s.init->decls[0];
      if (d.type->kind != Type::K::UInt && d.type->kind != Type::K::Int)
        error(d.loc, "the loop variable must have type int or uint");
      if (!d.init)
        error(d.loc, "the loop variable must be initialized");
      checkStmt(*s.init, true, false);
      loopVar = d.name;
      loopVarType = d.type;
    } else if (s.init->kind == Stmt::K::Assign &&
               s.init->lhs->kind == Expr::K::Var) {
      checkStmt(*s.init, true, false);
      loopVar = s.init->lhs->name;
      loopVarType = s.init->lhs->type;
      if (loopVarType && loopVarType->kind != Type::K::UInt &&
          loopVarType->kind != Type::K::Int)
        error(s.init->loc, "the loop variable must have type int or uint");
    } else {
      error(s.init->loc,
            "loop initialization must declare or assign a single integer "
            "variable");
      checkStmt(*s.init, true, false);
    }

    // test: var op limit, optionally && extra
    Expr* cmp = s.cond.get();
    if (cmp->kind == Expr::K::Binary && cmp->op == Expr::Op::LogAnd)
      cmp = cmp->a.get();
    bool cmpOk = cmp->kind == Expr::K::Binary &&
                 (cmp->op == Expr::Op::Lt || cmp->op == Expr::Op::Le ||
                  cmp->op == Expr::Op::Gt || cmp->op == Expr::Op::Ge) &&
                 cmp->a->kind == Expr::K::Var && cmp->a->name == loopVar;
    if (!cmpOk)
      error(s.cond->loc,
            "the loop test must compare the loop variable with a limit "
            "(var < limit, optionally && more)");
    checkExpr(*s.cond);
    if (cmpOk && !cmp->b->integral)
      error(cmp->b->loc, "the loop limit must be an integer expression");

    // update: loopvar = loopvar +/- positive constant, toward the limit
    bool updateOk = false;
    bool increasing = false;
    if (s.update->kind == Stmt::K::Assign &&
        s.update->lhs->kind == Expr::K::Var &&
        s.update->lhs->name == loopVar &&
        s.update->rhs->kind == Expr::K::Binary &&
        (s.update->rhs->op == Expr::Op::Add ||
         s.update->rhs->op == Expr::Op::Sub) &&
        s.update->rhs->a->kind == Expr::K::Var &&
        s.update->rhs->a->name == loopVar) {
      checkExpr(*s.update->rhs->b);
      if (s.update->rhs->b->hasConstValue &&
          s.update->rhs->b->constValue > 0) {
        updateOk = true;
        increasing = s.update->rhs->op == Expr::Op::Add;
      }
    }
    if (!updateOk) {
      error(s.update->loc,
            "the loop update must step the loop variable by a positive "
            "constant");
      checkStmt(*s.update, true, false);
    } else {
      checkStmt(*s.update, true, false);
      if (cmpOk) {
        bool wantIncreasing =
            cmp->op == Expr::Op::Lt || cmp->op == Expr::Op::Le;
        if (increasing != wantIncreasing)
          error(s.update->loc,
                "the loop update moves away from the limit; termination "
                "cannot be established");
      }
    }

    if (containsReturn(*s.loopBody))
      error(s.loopBody->loc, "'return' may not occur inside a loop body");
    std::vector<std::string> bodyAssigns;
    collectAssigned(*s.loopBody, bodyAssigns);
    for (const auto& n : bodyAssigns)
      if (n == loopVar)
        error(s.loopBody->loc,
              "the loop variable may not be assigned in the loop body");

    std::set<std::string> bodyState = *state;
    std::set<std::string>* saved = state;
    state = &bodyState;
    checkStmt(*s.loopBody, true, false);
    state = saved;
    scopes.pop_back();
    return true;
  }

  bool checkWhile(Stmt& s) {
    if (!s.whileBound) {
      error(s.loc,
            "a while loop requires a preceding '// MASC: <expr> iterations' "
            "directive");
    } else {
      checkExpr(*s.whileBound);
      requireIntegral(*s.whileBound, "iteration bound");
      std::vector<std::string> bodyAssigns;
      collectAssigned(*s.loopBody, bodyAssigns);
      checkBoundFreeOf(*s.whileBound, bodyAssigns);
    }
    checkExpr(*s.cond);
    requireNumeric(*s.cond, "'while' condition");
    if (containsReturn(*s.loopBody))
      error(s.loopBody->loc, "'return' may not occur inside a loop body");
    std::set<std::string> bodyState = *state;
    std::set<std::string>* saved = state;
    state = &bodyState;
    checkStmt(*s.loopBody, true, false);
    state = saved;
    return true;
  }

  void checkBoundFreeOf(const Expr& bound,
                        const std::vector<std::string>& names) {
    if (bound.kind == Expr::K::Var)
      for (const auto& n : names)
        if (n == bound.name)
          error(bound.loc, "the iteration bound reads '" + n +
                               "', which is assigned within the loop");
    if (bound.a) checkBoundFreeOf(*bound.a, names);
    if (bound.b) checkBoundFreeOf(*bound.b, names);
    if (bound.c) checkBoundFreeOf(*bound.c, names);
    for (const auto& arg : bound.args) checkBoundFreeOf(*arg, names);
  }

  bool checkSwitch(Stmt& s, bool inLoop) {
    checkExpr(*s.cond);
    requireIntegral(*s.cond, "'switch' subject");
    std::set<Int> seen;
    bool hasDefault = false;
    for (auto& arm : s.arms) {
      arm.labelValues.clear();
      for (auto& lab : arm.labels) {
        checkExpr(*lab);
        if (!lab->hasConstValue) {
          error(lab->loc, "case label must be a constant integer");
          continue;
        }
        if (!seen.insert(lab->constValue).second)
          error(lab->loc, "duplicate case label " + lab->constValue.str());
        arm.labelValues.push_back(lab->constValue);
      }
      if (arm.isDefault) {
        if (hasDefault) error(s.loc, "multiple default arms");
        hasDefault = true;
      }
    }
    // analyze bodies
    std::set<std::string>* saved = state;
    std::vector<std::set<std::string>> completing;
    for (std::size_t ai = 0; ai < s.arms.size(); ++ai) {
      auto& arm = s.arms[ai];
      bool last = ai + 1 == s.arms.size();
      if (arm.body.empty()) {
        if (last)
          error(s.loc, "a switch arm may not be empty");
        continue;
      }
      std::set<std::string> armState = *saved;
      state = &armState;
      scopes.emplace_back();
      bool live = true;
      for (std::size_t i = 0; i < arm.body.size(); ++i) {
        Stmt& st = *arm.body[i];
        bool isLast = i + 1 == arm.body.size();
        if (st.kind == Stmt::K::Break && !isLast)
          error(st.loc, "'break' must be the final statement of its arm");
        if (!live) diags.warning(st.loc, "unreachable statement");
        bool c = checkStmt(st, inLoop, isLast);
        live = live && c;
      }
      Stmt& lastStmt = *arm.body.back();
      bool terminated = lastStmt.kind == Stmt::K::Break ||
                        lastStmt.kind == Stmt::K::Return || !live;
      if (!last && !terminated)
        error(lastStmt.loc,
              "a switch arm must end with 'break' (fallthrough is not "
              "supported)");
      scopes.pop_back();
      state = saved;
      if (live || lastStmt.kind == Stmt::K::Break)
        completing.push_back(std::move(armState));
    }
    state = saved;
    if (hasDefault && !completing.empty()) {
      // definitely assigned after: intersection over completing arms
      std::set<std::string> merged = completing[0];
      for (std::size_t i = 1; i < completing.size(); ++i) {
        std::set<std::string> next;
        for (const auto& n : merged)
          if (completing[i].count(n)) next.insert(n);
        merged = std::move(next);
      }
      *state = std::move(merged);
    }
    return hasDefault ? !completing.empty() : true;
  }

  // ---- program -----------------------------------------------------------

  void run() {
    for (const auto& [name, t] : prog.typedefs) reservedNames.insert(name);

    for (auto& c : prog.constants) {
      if (constants.count(c.name) || reservedNames.count(c.name)) {
        error(c.loc, "constant '" + c.name + "' redefines an existing name");
        continue;
      }
      checkExpr(*c.init);
      checkAssignable(*c.init, c.type, "constant initializer");
      if (c.init->hasConstValue) {
        if (c.type->isRegister()) {
          RegisterFormat f = c.type->regFormat();
          c.value = Value(RawRegister{
              convertRaw(Rational(c.init->constValue), f), f});
        } else {
          c.value = Value(c.init->constValue);
        }
        c.folded = true;
      } else {
        error(c.init->loc,
              "constant initializer must be a constant expression");
      }
      constants[c.name] = &c;
    }

    for (auto& fn : prog.functions) {
      if (functions.count(fn.name) || constants.count(fn.name) ||
          reservedNames.count(fn.name))
        error(fn.loc, "'" + fn.name + "' redefines an existing name");
      curFn = &fn;
      scopes.clear();
      scopes.emplace_back();
      std::set<std::string> fnState;
      state = &fnState;
      for (const auto& p : fn.params) {
        declareVar(p.loc, p.name, p.type);
        fnState.insert(p.name);
      }
      if (!wellFormedBlock(*fn.body))
        error(fn.loc, "'" + fn.name +
                          "' is not well-formed with respect to return "
                          "statements");
      checkStmt(*fn.body, false, false);
      state = nullptr;
      curFn = nullptr;
      functions[fn.name] = &fn;
    }
    if (!diags.hasErrors()) prog.checked = true;
  }
};

}  // namespace

void checkProgram(Program& p, Diagnostics& diags) {
  Checker c(p, diags);
  c.run();
}

std::vector<std::string> assignedNames(const Stmt& s) {
  std::vector<std::string> out;
  collectAssigned(s, out);
  return out;
}

}  // namespace masc
