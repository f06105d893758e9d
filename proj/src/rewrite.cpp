#include <set>

#include "masc/checker.hpp"

namespace masc {

namespace {

// Syntactic compliance with the restricted for-loop shape; used only to
// decide whether a directive-carrying for loop needs rewriting (the checker
// performs the authoritative validation).
bool forLooksCompliant(const Stmt& s) {
  std::string var;
  if (s.init->kind == Stmt::K::Decl) {
    const Declarator& d = s.init->decls[0];
    if ((d.type->kind != Type::K::UInt && d.type->kind != Type::K::Int) ||
        !d.init)
      return false;
    var = d.name;
  } else if (s.init->kind == Stmt::K::Assign &&
             s.init->lhs->kind == Expr::K::Var) {
    var = s.init->lhs->name;
  } else {
    return false;
  }
  const Expr* cmp = s.cond.get();
  if (cmp->kind == Expr::K::Binary && cmp->op == Expr::Op::LogAnd)
    cmp = cmp->a.get();
  if (cmp->kind != Expr::K::Binary ||
      (cmp->op != Expr::Op::Lt && cmp->op != Expr::Op::Le &&
       cmp->op != Expr::Op::Gt && cmp->op != Expr::Op::Ge) ||
      cmp->a->kind != Expr::K::Var || cmp->a->name != var)
    return false;
  const Stmt& u = *s.update;
  if (u.kind != Stmt::K::Assign || u.lhs->kind != Expr::K::Var ||
      u.lhs->name != var || u.rhs->kind != Expr::K::Binary ||
      (u.rhs->op != Expr::Op::Add && u.rhs->op != Expr::Op::Sub) ||
      u.rhs->a->kind != Expr::K::Var || u.rhs->a->name != var ||
      u.rhs->b->kind != Expr::K::IntLit || u.rhs->b->intValue <= 0)
    return false;
  return true;
}

struct Rewriter {
  Diagnostics& diags;
  std::set<std::string> usedNames;
  int freshCounter = 0;

  std::string freshVar() {
    std::string name = "_i";
    while (usedNames.count(name)) name = "_i" + std::to_string(freshCounter++);
    usedNames.insert(name);
    return name;
  }

  void collectNames(const Stmt& s) {
    for (const auto& n : assignedNames(s)) usedNames.insert(n);
  }

  // while (c) B  with bound e  ->  for (uint _i = 0; _i < e && c; _i += 1) B
  StmtPtr rewriteWhile(Stmt& s) {
    SrcLoc l = s.loc;
    std::vector<std::string> loopAssigns = assignedNames(*s.loopBody);
    checkBound(*s.whileBound, loopAssigns);
    std::string v = freshVar();

    auto loop = Stmt::make(Stmt::K::For, l);
    auto init = Stmt::make(Stmt::K::Decl, l);
    Declarator d;
    d.loc = l;
    d.name = v;
    d.type = Type::uintType();
    d.init = Expr::intLit(l, 0);
    init->decls.push_back(std::move(d));
    loop->init = std::move(init);

    loop->cond = Expr::binary(
        l, Expr::Op::LogAnd,
        Expr::binary(l, Expr::Op::Lt, Expr::var(l, v),
                     std::move(s.whileBound)),
        std::move(s.cond));

    auto update = Stmt::make(Stmt::K::Assign, l);
    update->lhs = Expr::var(l, v);
    update->rhs = Expr::binary(l, Expr::Op::Add, Expr::var(l, v),
                               Expr::intLit(l, 1));
    loop->update = std::move(update);
    loop->loopBody = std::move(s.loopBody);
    return loop;
  }

  // Non-compliant for loop with a bound: hoist init into a wrapping block
  // and fold the update into the body, then rewrite as a while loop.
  StmtPtr rewriteFor(Stmt& s) {
    SrcLoc l = s.loc;
    auto wh = Stmt::make(Stmt::K::While, l);
    wh->cond = std::move(s.cond);
    wh->whileBound = std::move(s.whileBound);
    wh->loopBody = std::move(s.loopBody);
    wh->loopBody->body.push_back(std::move(s.update));
    auto blk = Stmt::make(Stmt::K::Block, l);
    blk->body.push_back(std::move(s.init));
    blk->body.push_back(rewriteWhile(*wh));
    return blk;
  }

  void checkBound(const Expr& bound, const std::vector<std::string>& names) {
    if (bound.kind == Expr::K::Var)
      for (const auto& n : names)
        if (n == bound.name)
          diags.error(bound.loc, "the iteration bound reads '" + n +
                                     "', which is assigned within the loop");
    if (bound.a) checkBound(*bound.a, names);
    if (bound.b) checkBound(*bound.b, names);
    if (bound.c) checkBound(*bound.c, names);
    for (const auto& arg : bound.args) checkBound(*arg, names);
  }

  void rewriteStmt(StmtPtr& sp) {
    Stmt& s = *sp;
    switch (s.kind) {
      case Stmt::K::Block:
        for (auto& inner : s.body) rewriteStmt(inner);
        break;
      case Stmt::K::If:
        rewriteStmt(s.thenS);
        if (s.elseS) rewriteStmt(s.elseS);
        break;
      case Stmt::K::For:
        rewriteStmt(s.loopBody);
        if (s.whileBound && !forLooksCompliant(s)) {
          sp = rewriteFor(s);
        } else if (s.whileBound) {
          diags.warning(s.loc,
                        "iteration-bound directive on a compliant for loop "
                        "is ignored");
          s.whileBound.reset();
        }
        break;
      case Stmt::K::While:
        rewriteStmt(s.loopBody);
        if (!s.whileBound) {
          diags.error(s.loc,
                      "a while loop requires a preceding "
                      "'// MASC: <expr> iterations' directive");
          break;
        }
        sp = rewriteWhile(s);
        break;
      case Stmt::K::Switch:
        for (auto& arm : s.arms)
          for (auto& inner : arm.body) rewriteStmt(inner);
        break;
      default:
        break;
    }
  }

  void rewriteFunction(FunctionDef& fn) {
    usedNames.clear();
    freshCounter = 0;
    for (const auto& p : fn.params) usedNames.insert(p.name);
    collectNames(*fn.body);
    rewriteStmt(fn.body);
  }
};

}  // namespace

void rewriteBoundedLoops(Program& p, Diagnostics& diags) {
  Rewriter rw{diags};
  for (auto& fn : p.functions) rw.rewriteFunction(fn);
}

}  // namespace masc
