#include "masc/eval_ir.hpp"

#include <stdexcept>

namespace masc {

namespace {

bool truthy(const Value& v) {
  if (v.isNumber()) return v.number() != 0;
  if (v.isArray()) return !v.array().entries().empty();  // NIL is falsy
  return true;
}

Int asInt(const Value& v, const char* what) {
  if (!v.isIntegral())
    throw RuntimeError(std::string(what) + " requires an integer", {});
  return v.integer();
}

std::int64_t asSmall(const Value& v, const char* what) {
  Int i = asInt(v, what);
  if (i < -1000000 || i > 1000000)
    throw RuntimeError(std::string(what) + " index out of range", {});
  return static_cast<std::int64_t>(i);
}

}  // namespace

struct IREvaluator::Env {
  struct Entry {
    const std::string* name;
    Value val;
  };
  std::vector<Entry> entries;

  void bind(const std::string& name, Value v) {
    entries.push_back({&name, std::move(v)});
  }
  const Value* find(const std::string& name) const {
    for (auto it = entries.rbegin(); it != entries.rend(); ++it)
      if (*it->name == name) return &it->val;
    return nullptr;
  }
};

struct IREvaluator::TailCall {
  bool hit = false;
  std::vector<Value> args;
};

IREvaluator::IREvaluator(std::vector<FuncIR> defs, EvalIROptions opts)
    : defs_(std::move(defs)), opts_(opts) {}

const FuncIR* IREvaluator::find(const std::string& name) const {
  for (const auto& d : defs_)
    if (d.name == name) return &d;
  return nullptr;
}

Value IREvaluator::call(const std::string& fn,
                        const std::vector<Value>& args) {
  const FuncIR* def = find(fn);
  if (!def) throw RuntimeError("no IR function named '" + fn + "'", {});
  steps_ = 0;
  return invoke(*def, args, nullptr, 0);
}

Value evalIR(const std::vector<FuncIR>& defs, const std::string& fn,
             const std::vector<Value>& args, EvalIROptions opts) {
  IREvaluator ev(defs, opts);
  return ev.call(fn, args);
}

Value IREvaluator::invoke(const FuncIR& fn, std::vector<Value> args,
                          const Int* parentMeasure, int depth) {
  if (depth > 500) throw RuntimeError("IR call depth exceeded", {});
  if (args.size() != fn.params.size())
    throw RuntimeError("'" + fn.name + "' arity mismatch", {});
  const Int* prev = parentMeasure;
  Int prevStore;
  // Self-calls in tail position loop here instead of recursing.
  while (true) {
    Env env;
    for (std::size_t i = 0; i < args.size(); ++i)
      env.bind(fn.params[i], std::move(args[i]));

    Int m;
    bool haveMeasure = fn.recursive();
    if (haveMeasure) {
      Value mv = eval(fn.measure, env, fn, nullptr, depth, nullptr);
      if (opts_.violations) {
        if (!mv.isIntegral() || mv.integer() < 0)
          opts_.violations->push_back(
              {fn.name, "measure is not a natural number: " + mv.str()});
        else if (prev && !(mv.integer() < *prev))
          opts_.violations->push_back(
              {fn.name, "measure did not decrease: " + prev->str() + " -> " +
                            mv.integer().str()});
      }
      if (mv.isIntegral()) m = mv.integer();
    }

    TailCall tc;
    Value v = eval(fn.body, env, fn, haveMeasure ? &m : nullptr, depth, &tc);
    if (!tc.hit) return v;
    args = std::move(tc.args);
    prevStore = m;
    prev = &prevStore;
  }
}

Value IREvaluator::eval(const SExpr& t, Env& env, const FuncIR& fn,
                        const Int* measureHere, int depth, TailCall* tail) {
  if (++steps_ > 500000000)
    throw RuntimeError("IR evaluation step limit exceeded", {});
  if (t.isInteger()) return Value(t.num());
  if (t.isSymbol()) {
    if (t.sym() == "NIL") return Value(ArrayValue{});
    if (t.sym() == "T") return Value(Int(1));
    if (const Value* v = env.find(t.sym())) return *v;
    throw RuntimeError("unbound IR variable '" + t.sym() + "'", {});
  }
  if (t.size() == 0 || !t[0].isSymbol())
    throw RuntimeError("bad IR term " + t.str(), {});
  const std::string& h = t[0].sym();

  auto sub = [&](const SExpr& x) {
    return eval(x, env, fn, measureHere, depth, nullptr);
  };
  auto num = [&](const SExpr& x) {
    Value v = sub(x);
    if (!v.isNumber())
      throw RuntimeError("IR arithmetic on a non-number", {});
    return v.number();
  };

  if (h == "LET" || h == "LET*") {
    std::size_t mark = env.entries.size();
    if (h == "LET") {
      std::vector<Value> vals;
      for (const auto& b : t[1].items()) vals.push_back(sub(b[1]));
      for (std::size_t i = 0; i < t[1].size(); ++i)
        env.bind(t[1][i][0].sym(), std::move(vals[i]));
    } else {
      for (const auto& b : t[1].items()) env.bind(b[0].sym(), sub(b[1]));
    }
    Value v = eval(t[2], env, fn, measureHere, depth, tail);
    env.entries.resize(mark);
    return v;
  }
  if (h == "MV-LET") {
    Value tup = sub(t[2]);
    if (!tup.isTuple())
      throw RuntimeError("MV-LET of a single value", {});
    const auto& items = tup.tuple().items;
    if (items.size() != t[1].size())
      throw RuntimeError("MV-LET arity mismatch", {});
    std::size_t mark = env.entries.size();
    for (std::size_t i = 0; i < items.size(); ++i)
      env.bind(t[1][i].sym(), items[i]);
    Value v = eval(t[3], env, fn, measureHere, depth, tail);
    env.entries.resize(mark);
    return v;
  }
  if (h == "IF")
    return truthy(sub(t[1])) ? eval(t[2], env, fn, measureHere, depth, tail)
                             : eval(t[3], env, fn, measureHere, depth, tail);
  if (h == "IF1") {
    Value c = sub(t[1]);
    bool taken = !(c.isNumber() && c.number() == 0);
    return taken ? eval(t[2], env, fn, measureHere, depth, tail)
                 : eval(t[3], env, fn, measureHere, depth, tail);
  }
  if (h == "MV") {
    TupleValue tv;
    for (std::size_t i = 1; i < t.size(); ++i) tv.items.push_back(sub(t[i]));
    return Value(std::move(tv));
  }
  if (h == "IN-FUNCTION") {
    Value v = sub(t[2]);
    if (!truthy(v)) throw AssertionFailure(t[1].sym(), {});
    return v;
  }
  if (h == "AND") {
    for (std::size_t i = 1; i < t.size(); ++i)
      if (!truthy(sub(t[i]))) return Value(Int(0));
    return Value(Int(1));
  }
  if (h == "OR") {
    for (std::size_t i = 1; i < t.size(); ++i)
      if (truthy(sub(t[i]))) return Value(Int(1));
    return Value(Int(0));
  }
  if (h == "NOT") return Value(Int(truthy(sub(t[1])) ? 0 : 1));
  if (h == "INTEGERP") {
    Value v = sub(t[1]);
    return Value(Int(v.isNumber() && v.isIntegral() ? 1 : 0));
  }
  if (h == "EQUAL")
    return Value(Int(sameDenotation(sub(t[1]), sub(t[2])) ? 1 : 0));

  if (h == "+" || h == "*") {
    Rational acc = h == "+" ? 0 : 1;
    for (std::size_t i = 1; i < t.size(); ++i) {
      Rational x = num(t[i]);
      acc = h == "+" ? Rational(acc + x) : Rational(acc * x);
    }
    return Value(std::move(acc));
  }
  if (h == "-") {
    if (t.size() == 2) return Value(Rational(-num(t[1])));
    return Value(Rational(num(t[1]) - num(t[2])));
  }
  if (h == "/") {
    Rational d = num(t[2]);
    if (d == 0) throw RuntimeError("IR division by zero", {});
    return Value(Rational(num(t[1]) / d));
  }
  if (h == "1-") return Value(Rational(num(t[1]) - 1));
  if (h == "1+") return Value(Rational(num(t[1]) + 1));
  if (h == "MOD")
    return Value(floorMod(asInt(sub(t[1]), "MOD"), asInt(sub(t[2]), "MOD")));
  if (h == "EXPT") {
    Int b = asInt(sub(t[1]), "EXPT");
    Int e = asInt(sub(t[2]), "EXPT");
    if (e >= 0) {
      Int r = 1;
      for (Int i = 0; i < e; ++i) r *= b;
      return Value(std::move(r));
    }
    Int r = 1;
    for (Int i = 0; i < -e; ++i) r *= b;
    return Value(Rational(Int(1), r));
  }
  if (h == "FL") return Value(fl(num(t[1])));
  if (h == "NFIX") {
    Value v = sub(t[1]);
    if (v.isNumber() && v.isIntegral() && v.integer() >= 0) return v;
    return Value(Int(0));
  }

  if (h == "BITS")
    return Value(bits(asInt(sub(t[1]), "BITS"), asSmall(sub(t[2]), "BITS"),
                      asSmall(sub(t[3]), "BITS")));
  if (h == "BITN")
    return Value(bitn(asInt(sub(t[1]), "BITN"), asSmall(sub(t[2]), "BITN")));
  if (h == "SETBITS")
    return Value(setbits(asInt(sub(t[1]), "SETBITS"),
                         asSmall(sub(t[2]), "SETBITS"),
                         asSmall(sub(t[3]), "SETBITS"),
                         asSmall(sub(t[4]), "SETBITS"),
                         asInt(sub(t[5]), "SETBITS")));
  if (h == "SETBITN")
    return Value(setbitn(asInt(sub(t[1]), "SETBITN"),
                         asSmall(sub(t[2]), "SETBITN"),
                         asSmall(sub(t[3]), "SETBITN"),
                         asInt(sub(t[4]), "SETBITN")));
  if (h == "CAT") {
    std::vector<std::pair<Int, std::int64_t>> fields;
    for (std::size_t i = 1; i + 1 < t.size(); i += 2)
      fields.emplace_back(asInt(sub(t[i]), "CAT"),
                          asSmall(sub(t[i + 1]), "CAT"));
    return Value(cat(fields));
  }
  if (h == "INTVAL")
    return Value(intval(asSmall(sub(t[1]), "INTVAL"),
                        asInt(sub(t[2]), "INTVAL")));

  if (h == "LOGAND")
    return Value(logand(asInt(sub(t[1]), "LOGAND"), asInt(sub(t[2]), "LOGAND")));
  if (h == "LOGIOR")
    return Value(logior(asInt(sub(t[1]), "LOGIOR"), asInt(sub(t[2]), "LOGIOR")));
  if (h == "LOGXOR")
    return Value(logxor(asInt(sub(t[1]), "LOGXOR"), asInt(sub(t[2]), "LOGXOR")));
  if (h == "LOGNOT") return Value(lognot(asInt(sub(t[1]), "LOGNOT")));
  if (h == "LOGAND1")
    return Value(Int(num(t[1]) != 0 && num(t[2]) != 0 ? 1 : 0));
  if (h == "LOGIOR1")
    return Value(Int(num(t[1]) != 0 || num(t[2]) != 0 ? 1 : 0));
  if (h == "LOGNOT1") return Value(Int(num(t[1]) == 0 ? 1 : 0));

  {
    static const struct { const char* name; CmpOp op; } cmps[] = {
        {"LOG<", CmpOp::Lt},  {"LOG<=", CmpOp::Le}, {"LOG>", CmpOp::Gt},
        {"LOG>=", CmpOp::Ge}, {"LOG=", CmpOp::Eq},  {"LOG<>", CmpOp::Ne},
        {"<", CmpOp::Lt},     {"<=", CmpOp::Le},    {">", CmpOp::Gt},
        {">=", CmpOp::Ge},    {"=", CmpOp::Eq},     {"/=", CmpOp::Ne},
    };
    for (const auto& c : cmps)
      if (h == c.name)
        return Value(Int(logcmp(c.op, num(t[1]), num(t[2]))));
  }

  if (h == "AG") {
    Value a = sub(t[2]);
    if (!a.isArray()) throw RuntimeError("AG of a non-array", {});
    return a.array().get(asInt(sub(t[1]), "AG"));
  }
  if (h == "AS") {
    Value a = sub(t[3]);
    if (!a.isArray()) throw RuntimeError("AS of a non-array", {});
    return Value(a.array().set(asInt(sub(t[1]), "AS"), sub(t[2])));
  }

  // function application
  const FuncIR* callee = find(h);
  if (!callee) throw RuntimeError("unknown IR operator '" + h + "'", {});
  std::vector<Value> args;
  for (std::size_t i = 1; i < t.size(); ++i) args.push_back(sub(t[i]));
  if (tail && callee == &fn) {
    // self-call in tail position: unwound by the invoke() loop, which also
    // re-checks the measure on re-entry
    tail->hit = true;
    tail->args = std::move(args);
    return Value();
  }
  const Int* parent = (callee == &fn) ? measureHere : nullptr;
  return invoke(*callee, std::move(args), parent, depth + 1);
}

}  // namespace masc
