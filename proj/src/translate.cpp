#include "masc/translate.hpp"

#include <set>
#include <stdexcept>

#include "masc/emit_ast.hpp"

namespace masc {

namespace {

struct TranslateBug : std::logic_error {
  using std::logic_error::logic_error;
};

const char* boolHead(const std::string& h) {
  if (h == "LOG<") return "<";
  if (h == "LOG<=") return "<=";
  if (h == "LOG>") return ">";
  if (h == "LOG>=") return ">=";
  if (h == "LOG=") return "=";
  if (h == "LOG<>") return "/=";
  return nullptr;
}

// Boolean-predicate form of a 0/1-valued term, used in guards and
// assertions: comparisons become Lisp predicates, LOGAND1/LOGIOR1/LOGNOT1
// become AND/OR/NOT. Other terms are left as-is (0 reads as false).
SExpr booleanize(const SExpr& t) {
  if (!t.isList() || t.size() == 0 || !t[0].isSymbol()) return t;
  const std::string& h = t[0].sym();
  if (const char* p = boolHead(h)) {
    SExpr out = t;
    out.items()[0] = SExpr::symbol(p);
    return out;
  }
  if (h == "LOGAND1" || h == "LOGIOR1" || h == "LOGNOT1") {
    std::vector<SExpr> items;
    items.push_back(SExpr::symbol(h == "LOGAND1"  ? "AND"
                                  : h == "LOGIOR1" ? "OR"
                                                   : "NOT"));
    for (std::size_t i = 1; i < t.size(); ++i)
      items.push_back(booleanize(t[i]));
    return SExpr::list(std::move(items));
  }
  return t;
}

// Variables read by a term, in order of first occurrence. Head symbols of
// applications are operators, not variables; IN-FUNCTION's first argument
// is a function name; LET/LET*/MV-LET bindings scope their variables.
void freeVarsScoped(const SExpr& t, std::vector<std::string>& order,
                    std::set<std::string>& seen,
                    std::set<std::string>& bound) {
  if (t.isInteger()) return;
  if (t.isSymbol()) {
    if (t.sym() == "NIL" || t.sym() == "T") return;
    if (bound.count(t.sym())) return;
    if (seen.insert(t.sym()).second) order.push_back(t.sym());
    return;
  }
  if (t.size() == 0) return;
  const std::string& h = t[0].isSymbol() ? t[0].sym() : "";
  if ((h == "LET" || h == "LET*") && t.size() == 3) {
    std::set<std::string> inner = bound;
    for (const auto& b : t[1].items()) {
      freeVarsScoped(b[1], order, seen, h == "LET*" ? inner : bound);
      inner.insert(b[0].sym());
    }
    freeVarsScoped(t[2], order, seen, inner);
    return;
  }
  if (h == "MV-LET" && t.size() == 4) {
    freeVarsScoped(t[2], order, seen, bound);
    std::set<std::string> inner = bound;
    for (const auto& v : t[1].items()) inner.insert(v.sym());
    freeVarsScoped(t[3], order, seen, inner);
    return;
  }
  std::size_t start = 1;
  if (t.size() >= 2 && h == "IN-FUNCTION") start = 2;
  for (std::size_t i = start; i < t.size(); ++i)
    freeVarsScoped(t[i], order, seen, bound);
}

void freeVarsInto(const SExpr& t, std::vector<std::string>& order,
                  std::set<std::string>& seen) {
  std::set<std::string> bound;
  freeVarsScoped(t, order, seen, bound);
}

std::vector<std::string> freeVars(const SExpr& t) {
  std::vector<std::string> order;
  std::set<std::string> seen;
  freeVarsInto(t, order, seen);
  return order;
}

// Count occurrences of a variable in a term.
int countVar(const SExpr& t, const std::string& v) {
  if (t.isSymbol()) return t.sym() == v ? 1 : 0;
  if (!t.isList()) return 0;
  int n = 0;
  for (std::size_t i = 1; i < t.size(); ++i) n += countVar(t[i], v);
  return n;
}

SExpr substVar(const SExpr& t, const std::string& v, const SExpr& repl) {
  if (t.isSymbol() && t.sym() == v) return repl;
  if (!t.isList()) return t;
  SExpr out = t;
  for (std::size_t i = 1; i < out.size(); ++i)
    out.items()[i] = substVar(out[i], v, repl);
  return out;
}

// Readability peephole for branch terms: a single-binding LET whose body
// uses the bound variable exactly once is inlined, turning
// (LET ((U (* 2 U))) (MV V U)) into (MV V (* 2 U)).
SExpr inlineSingleUse(SExpr t) {
  if (!t.headed("LET") || t.size() != 3) return t;
  const SExpr& binds = t[1];
  if (binds.size() != 1) return t;
  const SExpr& bind = binds[0];
  const std::string& v = bind[0].sym();
  if (v == "ASSERT") return t;
  SExpr body = inlineSingleUse(t[2]);
  bool simple = body.isSymbol() || body.headed("MV");
  if (simple && countVar(body, v) == 1) return substVar(body, v, bind[1]);
  SExpr out = std::move(t);
  out.items()[2] = std::move(body);
  return out;
}

struct Unit {
  std::vector<std::string> vars;
  SExpr term;
};

struct FnTranslator {
  std::string fnName;
  TranslateOptions opts;
  std::vector<FuncIR>& out;
  int loopCount = 0;

  SExpr mvOf(const std::vector<std::string>& outs) {
    if (outs.empty()) return SExpr::integer(0);
    if (outs.size() == 1) return SExpr::symbol(outs[0]);
    std::vector<SExpr> items;
    items.push_back(SExpr::symbol("MV"));
    for (const auto& v : outs) items.push_back(SExpr::symbol(v));
    return SExpr::list(std::move(items));
  }

  // Non-local variables written by a statement, in first-write order.
  void assigned(const SExpr& s, std::set<std::string> declared,
                std::vector<std::string>& order,
                std::set<std::string>& seen) {
    assignedIn(s, declared, order, seen);
  }
  void assignedIn(const SExpr& s, std::set<std::string>& declared,
                  std::vector<std::string>& order,
                  std::set<std::string>& seen) {
    if (!s.isList() || s.size() == 0) return;
    const std::string& h = s[0].isSymbol() ? s[0].sym() : "";
    auto write = [&](const std::string& v) {
      if (!declared.count(v) && seen.insert(v).second) order.push_back(v);
    };
    if (h == "DECLARE" || h == "ARRAY") {
      declared.insert(s[1].sym());
    } else if (h == "LIST") {
      for (std::size_t i = 1; i < s.size(); ++i)
        assignedIn(s[i], declared, order, seen);
    } else if (h == "ASSIGN") {
      write(s[1].sym());
    } else if (h == "MV-ASSIGN") {
      for (const auto& v : s[1].items()) write(v.sym());
    } else if (h == "IF") {
      std::set<std::string> d1 = declared, d2 = declared;
      assignedIn(s[2], d1, order, seen);
      if (!s[3].isNil()) {
        SExpr b = s[3];
        assignedIn(b, d2, order, seen);
      }
    } else if (h == "FOR") {
      std::set<std::string> d = declared;
      d.insert(s[1][0][1].sym());  // the loop variable is not an out
      SExpr body = s[2];
      assignedIn(body, d, order, seen);
    } else if (h == "SWITCH") {
      for (std::size_t i = 2; i < s.size(); ++i) {
        std::set<std::string> d = declared;
        for (std::size_t j = 1; j < s[i].size(); ++j)
          assignedIn(s[i][j], d, order, seen);
      }
    } else if (h == "BLOCK") {
      std::set<std::string> d = declared;
      for (std::size_t i = 1; i < s.size(); ++i)
        assignedIn(s[i], d, order, seen);
    }
    // ASSERT and RETURN write nothing
  }

  std::vector<std::string> assignedOf(const SExpr& s) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    std::set<std::string> declared;
    assignedIn(s, declared, order, seen);
    return order;
  }

  // Else-branch outs first, then the remaining then-branch outs; fixed by
  // the shape of the multiple value in the reference if/else translation.
  std::vector<std::string> ifOuts(const SExpr& thenB, const SExpr& elseB) {
    std::vector<std::string> thenOuts = assignedOf(thenB);
    std::vector<std::string> outs =
        elseB.isNil() ? std::vector<std::string>{} : assignedOf(elseB);
    std::set<std::string> seen(outs.begin(), outs.end());
    for (const auto& v : thenOuts)
      if (seen.insert(v).second) outs.push_back(v);
    return outs;
  }

  // --- nest construction ---------------------------------------------------

  std::vector<Unit> unitsOf(const std::vector<SExpr>& stmts,
                            std::size_t from, std::size_t to) {
    std::vector<Unit> us;
    for (std::size_t i = from; i < to; ++i) summarize(stmts[i], us);
    return us;
  }

  void summarize(const SExpr& s, std::vector<Unit>& us) {
    const std::string& h = s[0].sym();
    if (h == "DECLARE") {
      us.push_back({{s[1].sym()},
                    s.size() > 2 ? s[2] : SExpr::integer(0)});
    } else if (h == "ARRAY") {
      us.push_back({{s[1].sym()}, SExpr()});
    } else if (h == "LIST") {
      for (std::size_t i = 1; i < s.size(); ++i) summarize(s[i], us);
    } else if (h == "ASSIGN") {
      us.push_back({{s[1].sym()}, s[2]});
    } else if (h == "MV-ASSIGN") {
      std::vector<std::string> vars;
      for (const auto& v : s[1].items()) vars.push_back(v.sym());
      us.push_back({std::move(vars), s[2]});
    } else if (h == "ASSERT") {
      us.push_back({{"ASSERT"},
                    SExpr::make("IN-FUNCTION", s[1], booleanize(s[2]))});
    } else if (h == "IF") {
      std::vector<std::string> outs = ifOuts(s[2], s[3]);
      SExpr term = SExpr::make("IF1", s[1], branchTerm(s[2], outs),
                               branchTerm(s[3], outs));
      if (outs.empty()) outs.push_back("ASSERT");
      us.push_back({std::move(outs), std::move(term)});
    } else if (h == "SWITCH") {
      summarizeSwitch(s, us);
    } else if (h == "FOR") {
      translateFor(s, us);
    } else if (h == "BLOCK") {
      std::vector<std::string> outs = assignedOf(s);
      SExpr fin = mvOf(outs);
      SExpr term = nestOf(s.items(), 1, s.size(), &fin);
      if (outs.empty()) outs.push_back("ASSERT");
      us.push_back({std::move(outs), std::move(term)});
    } else {
      throw TranslateBug("unexpected statement form " + h);
    }
  }

  SExpr branchTerm(const SExpr& blockOrNil, const std::vector<std::string>& outs) {
    SExpr fin = outs.empty() ? SExpr::integer(0) : mvOf(outs);
    if (blockOrNil.isNil()) return fin;
    return inlineSingleUse(
        nestOf(blockOrNil.items(), 1, blockOrNil.size(), &fin));
  }

  void summarizeSwitch(const SExpr& s, std::vector<Unit>& us) {
    std::vector<std::string> order;
    std::set<std::string> seen;
    for (std::size_t i = 2; i < s.size(); ++i) {
      std::set<std::string> declared;
      for (std::size_t j = 1; j < s[i].size(); ++j)
        assignedIn(s[i][j], declared, order, seen);
    }
    std::vector<std::string> outs = std::move(order);
    SExpr fin = mvOf(outs);

    auto armTerm = [&](const SExpr& arm) {
      std::vector<SExpr> stmts(arm.items().begin() + 1, arm.items().end());
      std::vector<SExpr> block;
      block.push_back(SExpr::symbol("BLOCK"));
      for (auto& st : stmts) block.push_back(std::move(st));
      return branchTerm(SExpr::list(std::move(block)), outs);
    };

    // Default arm (labelled T) becomes the final else; labelled arms chain
    // into right-nested IF1s on equality with the subject.
    SExpr rest = fin;
    std::vector<std::size_t> labelled;
    for (std::size_t i = 2; i < s.size(); ++i) {
      if (s[i][0].isSymbol() && s[i][0].sym() == "T")
        rest = armTerm(s[i]);
      else
        labelled.push_back(i);
    }
    for (auto it = labelled.rbegin(); it != labelled.rend(); ++it) {
      const SExpr& arm = s[*it];
      SExpr cond;
      if (arm[0].isInteger()) {
        cond = SExpr::make("LOG=", s[1], arm[0]);
      } else {
        cond = SExpr::make("LOG=", s[1], arm[0][0]);
        for (std::size_t j = 1; j < arm[0].size(); ++j)
          cond = SExpr::make("LOGIOR1", std::move(cond),
                             SExpr::make("LOG=", s[1], arm[0][j]));
      }
      rest = SExpr::make("IF1", std::move(cond), armTerm(arm),
                         std::move(rest));
    }
    if (outs.empty()) outs.push_back("ASSERT");
    us.push_back({std::move(outs), std::move(rest)});
  }

  void translateFor(const SExpr& s, std::vector<Unit>& us) {
    const SExpr& init = s[1][0];
    const SExpr& test = s[1][1];
    const SExpr& update = s[1][2];
    const SExpr& body = s[2];
    std::string loopVar = init[1].sym();
    SExpr initTerm = init.size() > 2 ? init[2] : SExpr::integer(0);

    // Inner loops are generated while summarizing the body, so they take
    // the lower indices.
    std::vector<Unit> bodyUnits = unitsOf(body.items(), 1, body.size());
    std::string name = fnName + "-LOOP-" + std::to_string(loopCount++);

    std::vector<std::string> outs = assignedOf(s);

    std::vector<std::string> useOrder;
    std::set<std::string> seen;
    for (const auto& u : bodyUnits) freeVarsInto(u.term, useOrder, seen);
    freeVarsInto(test, useOrder, seen);
    // Locals bound inside the body are not arguments.
    std::set<std::string> bodyBound;
    for (const auto& u : bodyUnits)
      for (const auto& v : u.vars) bodyBound.insert(v);
    std::set<std::string> outSet(outs.begin(), outs.end());
    std::vector<std::string> params{loopVar};
    for (const auto& v : useOrder) {
      // outs are appended last; body-locals are bound inside the nest
      if (v == loopVar || outSet.count(v) || bodyBound.count(v)) continue;
      params.push_back(v);
    }
    for (const auto& v : outs) params.push_back(v);

    // The anchored comparison is the first conjunct of the test.
    SExpr cmp = test.headed("LOGAND1") ? test[1] : test;
    const std::string& op = cmp[0].sym();
    const SExpr& limit = cmp[2];
    SExpr loopSym = SExpr::symbol(loopVar);
    SExpr measure;
    if (op == "LOG<")
      measure = SExpr::make("NFIX", SExpr::make("-", limit, loopSym));
    else if (op == "LOG<=")
      measure = SExpr::make(
          "NFIX", SExpr::make("-", SExpr::make("1+", limit), loopSym));
    else if (op == "LOG>")
      measure = SExpr::make("NFIX", SExpr::make("-", loopSym, limit));
    else if (op == "LOG>=")
      measure = SExpr::make(
          "NFIX", SExpr::make("-", loopSym, SExpr::make("1-", limit)));
    else
      throw TranslateBug("loop test is not an anchored comparison");

    // Guard: integrality of the loop variable and of the test's variables,
    // then the test itself as a predicate.
    std::vector<SExpr> conj;
    conj.push_back(SExpr::symbol("AND"));
    conj.push_back(SExpr::make("INTEGERP", loopVar));
    for (const auto& v : freeVars(test))
      if (v != loopVar)
        conj.push_back(SExpr::make("INTEGERP", v));
    conj.push_back(booleanize(test));
    SExpr guard = SExpr::list(std::move(conj));

    // Body nest ends in the recursive call with the loop variable updated.
    std::vector<SExpr> call;
    call.push_back(SExpr::symbol(name));
    call.push_back(update[2]);
    for (std::size_t i = 1; i < params.size(); ++i)
      call.push_back(SExpr::symbol(params[i]));
    SExpr recur = SExpr::list(std::move(call));
    SExpr bodyNest = bindingsNest(bodyUnits, 0, recur);

    SExpr fnBody = SExpr::make("IF", std::move(guard), std::move(bodyNest),
                               mvOf(outs));
    out.push_back(FuncIR{name, params, std::move(measure), std::move(fnBody)});

    // The loop statement itself: a call with the initial loop value.
    std::vector<SExpr> entry;
    entry.push_back(SExpr::symbol(name));
    entry.push_back(initTerm);
    for (std::size_t i = 1; i < params.size(); ++i)
      entry.push_back(SExpr::symbol(params[i]));
    std::vector<std::string> vars = outs;
    if (vars.empty()) vars.push_back("ASSERT");
    us.push_back({std::move(vars), SExpr::list(std::move(entry))});
  }

  // Build the binding nest for units[k..], closing with the final term.
  SExpr bindingsNest(const std::vector<Unit>& units, std::size_t k,
                     const SExpr& fin) {
    if (k == units.size()) return fin;
    const Unit& u = units[k];
    if (u.vars.size() > 1) {
      std::vector<SExpr> vars;
      for (const auto& v : u.vars) vars.push_back(SExpr::symbol(v));
      return SExpr::make("MV-LET", SExpr::list(std::move(vars)), u.term,
                         bindingsNest(units, k + 1, fin));
    }
    // Merge a maximal run of single-variable bindings with distinct names.
    std::size_t end = k + 1;
    if (opts.mergeLets) {
      std::set<std::string> names{u.vars[0]};
      while (end < units.size() && units[end].vars.size() == 1 &&
             names.insert(units[end].vars[0]).second)
        ++end;
    }
    bool sequential = false;
    for (std::size_t i = k + 1; i < end && !sequential; ++i)
      for (std::size_t j = k; j < i && !sequential; ++j)
        if (countVar(units[i].term, units[j].vars[0]) > 0) sequential = true;
    std::vector<SExpr> binds;
    for (std::size_t i = k; i < end; ++i)
      binds.push_back(SExpr::make(units[i].vars[0], units[i].term));
    return SExpr::make(sequential ? "LET*" : "LET",
                       SExpr::list(std::move(binds)),
                       bindingsNest(units, end, fin));
  }

  // Nest over stmts[from..to); when no final term is supplied the last
  // statement (a return, or an if/else of returns) provides the value.
  SExpr nestOf(const std::vector<SExpr>& stmts, std::size_t from,
               std::size_t to, const SExpr* fin) {
    if (fin) {
      std::vector<Unit> us = unitsOf(stmts, from, to);
      return bindingsNest(us, 0, *fin);
    }
    if (from >= to) throw TranslateBug("empty body without a final term");
    SExpr last = finalTermOf(stmts[to - 1]);
    std::vector<Unit> us = unitsOf(stmts, from, to - 1);
    return bindingsNest(us, 0, last);
  }

  SExpr finalTermOf(const SExpr& s) {
    if (s.headed("RETURN")) return s[1];
    if (s.headed("IF"))
      return SExpr::make("IF1", s[1], finalTermOf(s[2]), finalTermOf(s[3]));
    if (s.headed("BLOCK")) return nestOf(s.items(), 1, s.size(), nullptr);
    throw TranslateBug("function body does not end in a return");
  }
};

}  // namespace

SExpr FuncIR::defun() const {
  std::vector<SExpr> params_;
  for (const auto& p : params) params_.push_back(SExpr::symbol(p));
  if (measure.isNil())
    return SExpr::make("DEFUN", name, SExpr::list(std::move(params_)), body);
  return SExpr::make(
      "DEFUN", name, SExpr::list(std::move(params_)),
      SExpr::make("DECLARE", SExpr::make("XARGS", ":MEASURE", measure)),
      body);
}

std::vector<FuncIR> translateSexpr(const SExpr& defuncs,
                                   TranslateOptions opts) {
  std::vector<SExpr> forms;
  if (defuncs.headed("DEFUNC"))
    forms.push_back(defuncs);
  else
    forms = defuncs.items();
  std::vector<FuncIR> out;
  for (const SExpr& f : forms) {
    if (!f.headed("DEFUNC")) throw TranslateBug("expected a DEFUNC form");
    FnTranslator tr{f[1].sym(), opts, out};
    std::vector<std::string> params;
    for (const auto& p : f[2].items()) params.push_back(p.sym());
    const SExpr& body = f[3];
    SExpr nest = tr.nestOf(body.items(), 1, body.size(), nullptr);
    out.push_back(FuncIR{f[1].sym(), std::move(params), SExpr(),
                         std::move(nest)});
  }
  return out;
}

std::vector<FuncIR> translate(const Program& p, TranslateOptions opts) {
  return translateSexpr(emitAstSexpr(p), opts);
}

std::vector<FuncIR> parseFuncIRs(const std::vector<SExpr>& forms) {
  std::vector<FuncIR> out;
  for (const SExpr& f : forms) {
    if (!f.headed("DEFUN"))
      throw std::invalid_argument("expected a DEFUN form");
    FuncIR ir;
    ir.name = f[1].sym();
    for (const auto& p : f[2].items()) ir.params.push_back(p.sym());
    std::size_t bodyIdx = 3;
    if (f.size() > 4 && f[3].headed("DECLARE")) {
      ir.measure = f[3][1][2];
      bodyIdx = 4;
    }
    ir.body = f[bodyIdx];
    out.push_back(std::move(ir));
  }
  return out;
}

}  // namespace masc
