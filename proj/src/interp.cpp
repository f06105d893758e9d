#include "masc/interp.hpp"

#include <ostream>

namespace masc {

namespace {

std::int64_t fieldIndex(const Type& structType, const std::string& name) {
  for (std::size_t i = 0; i < structType.fields.size(); ++i)
    if (structType.fields[i].first == name)
      return static_cast<std::int64_t>(i);
  return -1;
}

Int toIndex(const Value& v, SrcLoc loc) {
  if (!v.isIntegral()) throw RuntimeError("index is not an integer", loc);
  return v.integer();
}

}  // namespace

struct Interp::Env {
  struct Entry {
    const std::string* name;
    Value val;
    TypePtr type;
  };
  std::vector<Entry> entries;
  std::vector<std::size_t> marks;

  void pushScope() { marks.push_back(entries.size()); }
  void popScope() {
    entries.resize(marks.back());
    marks.pop_back();
  }
  void bind(const std::string& name, Value v, TypePtr t) {
    entries.push_back({&name, std::move(v), std::move(t)});
  }
  Entry* find(const std::string& name) {
    for (auto it = entries.rbegin(); it != entries.rend(); ++it)
      if (*it->name == name) return &*it;
    return nullptr;
  }
};

Interp::Interp(const Program& p, InterpOptions opts)
    : prog_(p), opts_(opts) {
  for (const auto& fn : p.functions) functions_[fn.name] = &fn;
  for (const auto& c : p.constants)
    if (c.folded) constants_[c.name] = c.value;
}

Value Interp::run(const std::string& fn, const std::vector<Value>& args) {
  auto it = functions_.find(fn);
  if (it == functions_.end())
    throw RuntimeError("no function named '" + fn + "'", {});
  const FunctionDef& def = *it->second;
  if (args.size() != def.params.size())
    throw RuntimeError("'" + fn + "' expects " +
                           std::to_string(def.params.size()) + " arguments",
                       def.loc);
  std::vector<Value> converted;
  for (std::size_t i = 0; i < args.size(); ++i)
    converted.push_back(
        convertValue(args[i], def.params[i].type, def.params[i].loc));
  return callFunction(def, std::move(converted), 0);
}

Value Interp::callFunction(const FunctionDef& fn, std::vector<Value> args,
                           int depth) {
  if (depth > 200) throw RuntimeError("call depth exceeded", fn.loc);
  if (opts_.trace) {
    *opts_.trace << std::string(depth * 2, ' ') << fn.name << "(";
    for (std::size_t i = 0; i < args.size(); ++i)
      *opts_.trace << (i ? ", " : "") << args[i].str();
    *opts_.trace << ")\n";
  }
  Env env;
  env.pushScope();
  for (std::size_t i = 0; i < fn.params.size(); ++i)
    env.bind(fn.params[i].name, std::move(args[i]), fn.params[i].type);
  const FunctionDef* savedFn = curFn_;
  curFn_ = &fn;
  Flow flow = execStmt(*fn.body, env);
  curFn_ = savedFn;
  if (flow != Flow::Returned)
    throw RuntimeError("'" + fn.name + "' finished without returning",
                       fn.loc);
  if (opts_.trace)
    *opts_.trace << std::string(depth * 2, ' ') << "=> " << result_.str()
                 << "\n";
  return std::move(result_);
}

Value Interp::convertValue(Value v, const TypePtr& t, SrcLoc loc) {
  switch (t->kind) {
    case Type::K::Bool:
      return Value(Int(v.numeric() != 0 ? 1 : 0));
    case Type::K::UInt:
    case Type::K::Int:
    case Type::K::Enum: {
      Int r = fl(v.numeric());
      if (opts_.strict64Lint && (r >= pow2(64) || r < -pow2(64)))
        warnings_.warning(loc, "uint/int value exceeds 64 bits");
      return Value(std::move(r));
    }
    case Type::K::UI:
    case Type::K::SI:
    case Type::K::UF:
    case Type::K::SF: {
      RegisterFormat f = t->regFormat();
      return Value(RawRegister{convertRaw(v.numeric(), f), f});
    }
    case Type::K::Array: {
      if (!v.isArray())
        throw RuntimeError("expected an aggregate value", loc);
      ArrayValue out;
      for (const auto& [i, e] : v.array().entries())
        out.setInPlace(i, convertValue(e, t->elem, loc));
      return Value(std::move(out));
    }
    case Type::K::Struct: {
      if (!v.isArray())
        throw RuntimeError("expected an aggregate value", loc);
      ArrayValue out;
      for (const auto& [i, e] : v.array().entries()) {
        std::size_t ord = std::size_t(i);
        if (ord < t->fields.size())
          out.setInPlace(i, convertValue(e, t->fields[ord].second, loc));
        else
          out.setInPlace(i, e);
      }
      return Value(std::move(out));
    }
    default:
      return v;
  }
}

Int Interp::evalRaw(const Expr& e, Env& env) {
  Value v = evalExpr(e, env);
  if (v.isRegister()) return v.reg().raw;
  if (!v.isIntegral())
    throw RuntimeError("raw-value context requires an integer", e.loc);
  return v.integer();
}

Value Interp::evalExpr(const Expr& e, Env& env) {
  switch (e.kind) {
    case Expr::K::IntLit:
      return Value(e.intValue);
    case Expr::K::BoolLit:
      return Value(Int(e.boolValue ? 1 : 0));
    case Expr::K::Var: {
      if (Env::Entry* ent = env.find(e.name)) return ent->val;
      auto c = constants_.find(e.name);
      if (c != constants_.end()) return c->second;
      throw RuntimeError("unbound variable '" + e.name + "'", e.loc);
    }
    case Expr::K::Unary: {
      if (e.op == Expr::Op::Neg) return Value(Rational(-evalExpr(*e.a, env).numeric()));
      if (e.op == Expr::Op::LogNot)
        return Value(Int(evalExpr(*e.a, env).numeric() == 0 ? 1 : 0));
      // BitNot: n-bit complement of the raw value
      Value a = evalExpr(*e.a, env);
      if (a.isRegister()) {
        std::int64_t n = a.reg().format.width;
        RegisterFormat f{RegKind::UI, n};
        return Value(RawRegister{pow2(n) - 1 - a.reg().raw, f});
      }
      return Value(Int(1) - fl(a.numeric()));  // boolean complement
    }
    case Expr::K::Binary: {
      using Op = Expr::Op;
      switch (e.op) {
        case Op::LogAnd: {
          if (evalExpr(*e.a, env).numeric() == 0) return Value(Int(0));
          return Value(Int(evalExpr(*e.b, env).numeric() != 0 ? 1 : 0));
        }
        case Op::LogOr: {
          if (evalExpr(*e.a, env).numeric() != 0) return Value(Int(1));
          return Value(Int(evalExpr(*e.b, env).numeric() != 0 ? 1 : 0));
        }
        default:
          break;
      }
      Value av = evalExpr(*e.a, env);
      Value bv = evalExpr(*e.b, env);
      switch (e.op) {
        case Op::Add: return Value(Rational(av.numeric() + bv.numeric()));
        case Op::Sub: return Value(Rational(av.numeric() - bv.numeric()));
        case Op::Mul: return Value(Rational(av.numeric() * bv.numeric()));
        case Op::Mod: {
          if (!av.isIntegral() || !bv.isIntegral())
            throw RuntimeError("'%' requires integers", e.loc);
          Int m = bv.integer();
          if (m <= 0) throw RuntimeError("'%' requires a positive modulus", e.loc);
          return Value(floorMod(av.integer(), m));
        }
        case Op::Shl: {
          if (!bv.isIntegral() || bv.integer() < 0)
            throw RuntimeError("shift amount must be a nonnegative integer",
                               e.loc);
          Int s = bv.integer();
          if (s > 1000000) throw RuntimeError("shift amount too large", e.loc);
          return Value(Rational(av.numeric() *
                                Rational(pow2(static_cast<std::int64_t>(s)))));
        }
        case Op::Shr: {
          if (!bv.isIntegral() || bv.integer() < 0)
            throw RuntimeError("shift amount must be a nonnegative integer",
                               e.loc);
          Int s = bv.integer();
          if (s > 1000000) throw RuntimeError("shift amount too large", e.loc);
          return Value(fl(av.numeric() /
                          Rational(pow2(static_cast<std::int64_t>(s)))));
        }
        case Op::BitAnd:
        case Op::BitOr:
        case Op::BitXor: {
          auto raw = [&](const Value& v) {
            if (v.isRegister()) return v.reg().raw;
            if (!v.isIntegral())
              throw RuntimeError("bitwise operand is not an integer", e.loc);
            return v.integer();
          };
          Int a = raw(av), b = raw(bv);
          if (e.op == Op::BitAnd) return Value(logand(a, b));
          if (e.op == Op::BitOr) return Value(logior(a, b));
          return Value(logxor(a, b));
        }
        case Op::Lt: return Value(Int(logcmp(CmpOp::Lt, av.numeric(), bv.numeric())));
        case Op::Le: return Value(Int(logcmp(CmpOp::Le, av.numeric(), bv.numeric())));
        case Op::Gt: return Value(Int(logcmp(CmpOp::Gt, av.numeric(), bv.numeric())));
        case Op::Ge: return Value(Int(logcmp(CmpOp::Ge, av.numeric(), bv.numeric())));
        case Op::Eq: return Value(Int(logcmp(CmpOp::Eq, av.numeric(), bv.numeric())));
        case Op::Ne: return Value(Int(logcmp(CmpOp::Ne, av.numeric(), bv.numeric())));
        default:
          throw RuntimeError("bad binary operator", e.loc);
      }
    }
    case Expr::K::Ternary:
      return evalExpr(*e.a, env).numeric() != 0 ? evalExpr(*e.b, env)
                                                : evalExpr(*e.c, env);
    case Expr::K::Index: {
      Value base = evalExpr(*e.a, env);
      Int i = toIndex(evalExpr(*e.b, env), e.loc);
      if (base.isArray()) {
        if (e.a->type && e.a->type->kind == Type::K::Array &&
            (i < 0 || i >= e.a->type->size))
          warnings_.warning(e.loc,
                            "array read outside the declared bounds (index " +
                                i.str() + ")");
        return base.array().get(i);
      }
      if (base.isRegister()) {
        if (i < 0 || i >= base.reg().format.width)
          throw RuntimeError("bit reference index out of range", e.loc);
        return Value(bitn(base.reg().raw, static_cast<std::int64_t>(i)));
      }
      throw RuntimeError("'[]' applied to a non-indexable value", e.loc);
    }
    case Expr::K::Subrange: {
      Value base = evalExpr(*e.a, env);
      if (!base.isRegister())
        throw RuntimeError("subrange of a non-register value", e.loc);
      Int i = toIndex(evalExpr(*e.b, env), e.loc);
      Int j = toIndex(evalExpr(*e.c, env), e.loc);
      std::int64_t n = base.reg().format.width;
      if (j < 0 || i < j || i >= n)
        throw RuntimeError("subrange indices out of range (need 0 <= j <= i "
                           "< " + std::to_string(n) + ")",
                           e.loc);
      return Value(bits(base.reg().raw, static_cast<std::int64_t>(i),
                        static_cast<std::int64_t>(j)));
    }
    case Expr::K::Field: {
      Value base = evalExpr(*e.a, env);
      if (!base.isArray() || !e.a->type ||
          e.a->type->kind != Type::K::Struct)
        throw RuntimeError("'.' applied to a non-struct value", e.loc);
      std::int64_t idx = fieldIndex(*e.a->type, e.name);
      if (idx < 0) throw RuntimeError("unknown field '" + e.name + "'", e.loc);
      return base.array().get(idx);
    }
    case Expr::K::Call: {
      auto it = functions_.find(e.name);
      if (it == functions_.end())
        throw RuntimeError("call to unknown function '" + e.name + "'",
                           e.loc);
      const FunctionDef& fn = *it->second;
      std::vector<Value> args;
      for (std::size_t i = 0; i < e.args.size(); ++i)
        args.push_back(convertValue(evalExpr(*e.args[i], env),
                                    fn.params[i].type, e.args[i]->loc));
      Value saved = std::move(result_);
      Value out = callFunction(fn, std::move(args), 1);
      result_ = std::move(saved);
      return out;
    }
  }
  throw RuntimeError("bad expression", e.loc);
}

void Interp::assignTo(const Expr& lhs, Value v, Env& env) {
  switch (lhs.kind) {
    case Expr::K::Var: {
      Env::Entry* ent = env.find(lhs.name);
      if (!ent) throw RuntimeError("unbound variable '" + lhs.name + "'",
                                   lhs.loc);
      ent->val = convertValue(std::move(v), ent->type, lhs.loc);
      return;
    }
    case Expr::K::Index: {
      Value base = evalExpr(*lhs.a, env);
      Int i = toIndex(evalExpr(*lhs.b, env), lhs.loc);
      if (base.isArray()) {
        const TypePtr& at = lhs.a->type;
        if (at && at->kind == Type::K::Array && (i < 0 || i >= at->size))
          throw RuntimeError("array write outside the declared bounds "
                             "(index " + i.str() + ")",
                             lhs.loc);
        Value elem = at && at->kind == Type::K::Array
                         ? convertValue(std::move(v), at->elem, lhs.loc)
                         : std::move(v);
        base.array().setInPlace(i, std::move(elem));
        assignAggregate(*lhs.a, std::move(base), env);
        return;
      }
      if (base.isRegister()) {
        std::int64_t n = base.reg().format.width;
        if (i < 0 || i >= n)
          throw RuntimeError("bit reference index out of range", lhs.loc);
        Int bit = v.isRegister() ? v.reg().raw : fl(v.numeric());
        Int raw = setbitn(base.reg().raw, n, static_cast<std::int64_t>(i),
                          bit);
        assignAggregate(*lhs.a,
                        Value(RawRegister{std::move(raw), base.reg().format}),
                        env);
        return;
      }
      throw RuntimeError("'[]' assignment to a non-indexable value", lhs.loc);
    }
    case Expr::K::Subrange: {
      Value base = evalExpr(*lhs.a, env);
      if (!base.isRegister())
        throw RuntimeError("subrange assignment to a non-register", lhs.loc);
      Int i = toIndex(evalExpr(*lhs.b, env), lhs.loc);
      Int j = toIndex(evalExpr(*lhs.c, env), lhs.loc);
      std::int64_t n = base.reg().format.width;
      if (j < 0 || i < j || i >= n)
        throw RuntimeError("subrange indices out of range (need 0 <= j <= i "
                           "< " + std::to_string(n) + ")",
                           lhs.loc);
      Int src = v.isRegister() ? v.reg().raw : fl(v.numeric());
      Int raw = setbits(base.reg().raw, n, static_cast<std::int64_t>(i),
                        static_cast<std::int64_t>(j), src);
      assignAggregate(*lhs.a,
                      Value(RawRegister{std::move(raw), base.reg().format}),
                      env);
      return;
    }
    case Expr::K::Field: {
      Value base = evalExpr(*lhs.a, env);
      if (!base.isArray() || !lhs.a->type ||
          lhs.a->type->kind != Type::K::Struct)
        throw RuntimeError("'.' assignment to a non-struct value", lhs.loc);
      std::int64_t idx = fieldIndex(*lhs.a->type, lhs.name);
      if (idx < 0)
        throw RuntimeError("unknown field '" + lhs.name + "'", lhs.loc);
      Value elem = convertValue(std::move(v), lhs.type, lhs.loc);
      base.array().setInPlace(idx, std::move(elem));
      assignAggregate(*lhs.a, std::move(base), env);
      return;
    }
    default:
      throw RuntimeError("expression is not assignable", lhs.loc);
  }
}

// Store an updated aggregate (or register) back into its containing slot.
void Interp::assignAggregate(const Expr& path, Value v, Env& env) {
  if (path.kind == Expr::K::Var) {
    Env::Entry* ent = env.find(path.name);
    if (!ent)
      throw RuntimeError("unbound variable '" + path.name + "'", path.loc);
    ent->val = std::move(v);
    return;
  }
  // nested aggregate: rebuild the parent
  if (path.kind == Expr::K::Index || path.kind == Expr::K::Field) {
    Value parent = evalExpr(*path.a, env);
    if (!parent.isArray())
      throw RuntimeError("bad assignment path", path.loc);
    Int key;
    if (path.kind == Expr::K::Index) {
      key = toIndex(evalExpr(*path.b, env), path.loc);
    } else {
      key = fieldIndex(*path.a->type, path.name);
    }
    parent.array().setInPlace(key, std::move(v));
    assignAggregate(*path.a, std::move(parent), env);
    return;
  }
  throw RuntimeError("bad assignment path", path.loc);
}

Interp::Flow Interp::execStmt(const Stmt& s, Env& env) {
  switch (s.kind) {
    case Stmt::K::Block: {
      env.pushScope();
      for (const auto& inner : s.body) {
        Flow f = execStmt(*inner, env);
        if (f != Flow::Normal) {
          env.popScope();
          return f;
        }
      }
      env.popScope();
      return Flow::Normal;
    }
    case Stmt::K::Decl: {
      for (const auto& d : s.decls) {
        Value init;
        if (d.init) {
          init = convertValue(evalExpr(*d.init, env), d.type, d.loc);
        } else if (d.type->isScalar()) {
          init = convertValue(Value(Int(0)), d.type, d.loc);
        } else {
          init = Value(ArrayValue{});
        }
        env.bind(d.name, std::move(init), d.type);
      }
      return Flow::Normal;
    }
    case Stmt::K::Assign:
      assignTo(*s.lhs, evalExpr(*s.rhs, env), env);
      return Flow::Normal;
    case Stmt::K::MvAssign: {
      Value v = evalExpr(*s.call, env);
      if (!v.isTuple())
        throw RuntimeError("multiple-value assignment from a single value",
                           s.loc);
      const auto& items = v.tuple().items;
      if (items.size() != s.mvTargets.size())
        throw RuntimeError("multiple-value arity mismatch", s.loc);
      for (std::size_t i = 0; i < items.size(); ++i)
        assignTo(*s.mvTargets[i], items[i], env);
      return Flow::Normal;
    }
    case Stmt::K::If:
      if (evalExpr(*s.cond, env).numeric() != 0) return execStmt(*s.thenS, env);
      if (s.elseS) return execStmt(*s.elseS, env);
      return Flow::Normal;
    case Stmt::K::For: {
      env.pushScope();
      execStmt(*s.init, env);
      while (evalExpr(*s.cond, env).numeric() != 0) {
        Flow f = execStmt(*s.loopBody, env);
        if (f != Flow::Normal) {
          env.popScope();
          return f;
        }
        execStmt(*s.update, env);
      }
      env.popScope();
      return Flow::Normal;
    }
    case Stmt::K::While: {
      long long guard = 0;
      while (evalExpr(*s.cond, env).numeric() != 0) {
        if (++guard > 100000000)
          throw RuntimeError("while loop exceeded the interpreter's "
                             "iteration safety cap",
                             s.loc);
        Flow f = execStmt(*s.loopBody, env);
        if (f != Flow::Normal) return f;
      }
      return Flow::Normal;
    }
    case Stmt::K::Switch: {
      Value subject = evalExpr(*s.cond, env);
      if (!subject.isIntegral() && !subject.isRegister())
        throw RuntimeError("switch subject is not an integer", s.loc);
      Int v = subject.isRegister() ? subject.reg().raw : subject.integer();
      const SwitchArm* chosen = nullptr;
      const SwitchArm* defaultArm = nullptr;
      for (const auto& arm : s.arms) {
        if (arm.isDefault) defaultArm = &arm;
        for (const auto& lab : arm.labelValues)
          if (lab == v && !chosen) chosen = &arm;
      }
      if (!chosen) chosen = defaultArm;
      if (!chosen) return Flow::Normal;
      env.pushScope();
      for (const auto& inner : chosen->body) {
        Flow f = execStmt(*inner, env);
        if (f == Flow::Broke) break;
        if (f == Flow::Returned) {
          env.popScope();
          return f;
        }
      }
      env.popScope();
      return Flow::Normal;
    }
    case Stmt::K::Assert:
      if (evalExpr(*s.cond, env).numeric() == 0)
        throw AssertionFailure(curFn_ ? curFn_->name : "?", s.loc);
      return Flow::Normal;
    case Stmt::K::Return: {
      if (s.retVals.size() == 1) {
        result_ = convertValue(evalExpr(*s.retVals[0], env),
                               curFn_->returnTypes[0], s.loc);
      } else {
        TupleValue t;
        for (std::size_t i = 0; i < s.retVals.size(); ++i)
          t.items.push_back(convertValue(evalExpr(*s.retVals[i], env),
                                         curFn_->returnTypes[i], s.loc));
        result_ = Value(std::move(t));
      }
      return Flow::Returned;
    }
    case Stmt::K::Break:
      return Flow::Broke;
  }
  return Flow::Normal;
}

Value run(const Program& p, const std::string& fn,
          const std::vector<Value>& args, InterpOptions opts) {
  Interp interp(p, opts);
  return interp.run(fn, args);
}

}  // namespace masc
