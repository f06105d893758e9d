#include "doctest.h"

#include "masc/parser.hpp"

using namespace masc;

namespace {

Program parseOk(const std::string& src) {
  Diagnostics diags;
  Program p = parseProgram(src, diags);
  INFO(diags.str());
  REQUIRE(!diags.hasErrors());
  return p;
}

bool rejects(const std::string& src) {
  Diagnostics diags;
  parseProgram(src, diags);
  return diags.hasErrors();
}

const char* kDivide = R"(
<uint, uint> Divide(uint m, uint n) {
  assert(n != 0);
  uint quot = 0, rem = m;
  // MASC: m iterations
  while (rem >= n) {
    quot++;
    rem -= n;
  }
  return <quot, rem>;
}
)";

const char* kBaz = R"(
uint baz(uint x, uint y, uint z) {
  uint u = y + z, v = u * x;
  for (uint i = 0; i < u && u < v; i += 2) {
    v--;
    for (int j = 5; j >= -3; j--) {
      assert(v > 0);
      u = x + 3 * u;
    }
  }
  return u + v;
}
)";

}  // namespace

TEST_CASE("Divide: tuple return, directive, compound assignment") {
  Program p = parseOk(kDivide);
  REQUIRE(p.functions.size() == 1);
  const FunctionDef& fn = p.functions[0];
  CHECK(fn.name == "Divide");
  REQUIRE(fn.returnTypes.size() == 2);
  CHECK(fn.returnTypes[0]->kind == Type::K::UInt);
  REQUIRE(fn.body->body.size() == 4);
  CHECK(fn.body->body[0]->kind == Stmt::K::Assert);
  const Stmt& loop = *fn.body->body[2];
  CHECK(loop.kind == Stmt::K::While);
  REQUIRE(loop.whileBound);
  CHECK(loop.whileBound->kind == Expr::K::Var);
  CHECK(loop.whileBound->name == "m");
  // quot++ desugars to quot = quot + 1
  const Stmt& inc = *loop.loopBody->body[0];
  CHECK(inc.kind == Stmt::K::Assign);
  CHECK(inc.rhs->op == Expr::Op::Add);
  const Stmt& ret = *fn.body->body[3];
  CHECK(ret.kind == Stmt::K::Return);
  CHECK(ret.retVals.size() == 2);
}

TEST_CASE("mv-assign statement") {
  Program p = parseOk(
      "<uint, uint> D(uint m, uint n) { return <m, n>; }\n"
      "uint Caller() {\n"
      "  uint q, r;\n"
      "  <q, r> = D(23, 5);\n"
      "  return q + r;\n"
      "}\n");
  const Stmt& mv = *p.functions[1].body->body[1];
  REQUIRE(mv.kind == Stmt::K::MvAssign);
  REQUIRE(mv.mvTargets.size() == 2);
  CHECK(mv.mvTargets[0]->name == "q");
  CHECK(mv.call->kind == Expr::K::Call);
  CHECK(mv.call->name == "D");
}

TEST_CASE("baz: nested loops, negative limits") {
  Program p = parseOk(kBaz);
  const Stmt& outer = *p.functions[0].body->body[1];
  REQUIRE(outer.kind == Stmt::K::For);
  CHECK(outer.init->kind == Stmt::K::Decl);
  CHECK(outer.cond->op == Expr::Op::LogAnd);
  CHECK(outer.update->rhs->op == Expr::Op::Add);  // i += 2
  const Stmt& inner = *outer.loopBody->body[1];
  REQUIRE(inner.kind == Stmt::K::For);
  CHECK(inner.init->decls[0].type->kind == Type::K::Int);
  CHECK(inner.cond->op == Expr::Op::Ge);
}

TEST_CASE("register types, arrays, switch, subrange") {
  Program p = parseOk(R"(
ui3 Encode(ui3 slice) {
  ui3 enc;
  switch (slice) {
  case 4: enc = 6; break;
  case 5: case 6: enc = 5; break;
  case 7: case 0: enc = 0; break;
  case 1: case 2: enc = 1; break;
  case 3: enc = 2; break;
  default: assert(false);
  }
  return enc;
}

ui3[17] Booth(ui32 x) {
  ui35 x35 = x << 1;
  ui3 a[17];
  for (int k = 0; k < 17; k++) {
    a[k] = Encode(x35[2 * k + 2:2 * k]);
  }
  return a;
}
)");
  const FunctionDef& enc = p.functions[0];
  CHECK(enc.params[0].type->kind == Type::K::UI);
  CHECK(enc.params[0].type->width == 3);
  const Stmt& sw = *enc.body->body[1];
  REQUIRE(sw.kind == Stmt::K::Switch);
  REQUIRE(sw.arms.size() == 6);
  CHECK(sw.arms[1].labels.size() == 2);
  CHECK(sw.arms[5].isDefault);
  CHECK(sw.arms[5].labels.empty());
  const FunctionDef& booth = p.functions[1];
  CHECK(booth.returnTypes[0]->kind == Type::K::Array);
  CHECK(booth.returnTypes[0]->size == 17);
  CHECK(booth.returnTypes[0]->elem->width == 3);
  const Stmt& loop = *booth.body->body[2];
  const Stmt& asg = *loop.loopBody->body[0];
  CHECK(asg.lhs->kind == Expr::K::Index);
  const Expr& call = *asg.rhs;
  REQUIRE(call.kind == Expr::K::Call);
  CHECK(call.args[0]->kind == Expr::K::Subrange);
}

TEST_CASE("fixed-point types and ternary") {
  Program p = parseOk(
      "ui8 f(sf8i2 x) {\n"
      "  ui8 y = 100, z = 3;\n"
      "  z = y[4:2] * x;\n"
      "  return z > 0 ? z : y;\n"
      "}\n");
  CHECK(p.functions[0].params[0].type->kind == Type::K::SF);
  CHECK(p.functions[0].params[0].type->width == 8);
  CHECK(p.functions[0].params[0].type->intBits == 2);
  const Stmt& ret = *p.functions[0].body->body[2];
  CHECK(ret.retVals[0]->kind == Expr::K::Ternary);
}

TEST_CASE("typedef, enum, struct, constants") {
  Program p = parseOk(R"(
typedef ui8 byte;
enum Mode { A, B = 5, C };
struct Pair { uint lo; uint hi; };
const uint N = 4;

uint f(byte b, Pair p) {
  uint acc[N];
  acc[0] = p.lo + p.hi + b + B;
  return acc[0];
}
)");
  REQUIRE(p.typedefs.size() == 3);
  CHECK(p.typedefs[0].second->kind == Type::K::UI);
  CHECK(p.typedefs[1].second->members.size() == 3);
  CHECK(p.typedefs[1].second->members[2].second == 6);
  CHECK(p.typedefs[2].second->fields.size() == 2);
  CHECK(p.findConstant("N") != nullptr);
  // array size folded through the constant
  const Stmt& decl = *p.functions[0].body->body[0];
  CHECK(decl.decls[0].type->size == 4);
}

TEST_CASE("mv-assign to array elements") {
  Program p = parseOk(R"(
<ui64, ui64> C(ui64 a, ui64 b) { return <a, b>; }
ui64 Sum(ui64 in[17]) {
  ui64 A1[8];
  for (uint i = 0; i < 4; i++) {
    <A1[2*i+0], A1[2*i+1]> = C(in[4*i], in[4*i+1]);
  }
  return A1[0] + A1[1];
}
)");
  const Stmt& loop = *p.functions[1].body->body[1];
  const Stmt& mv = *loop.loopBody->body[0];
  REQUIRE(mv.kind == Stmt::K::MvAssign);
  CHECK(mv.mvTargets[0]->kind == Expr::K::Index);
}

TEST_CASE("rejected inputs") {
  CHECK(rejects(""));
  CHECK(rejects("uint f(uint x) { return x / 2; }"));
  CHECK(rejects("uint f(uint *x) { return 0; }"));
  CHECK(rejects("uint f(uint x) { for (uint i=0;i<3;i++) { continue; } return x; }"));
  CHECK(rejects("uint f(uint x) { return y }"));
  CHECK(rejects("uint f(badtype x) { return 0; }"));
  CHECK(rejects("uf8i9 f(uint x) { return 0; }"));  // m > n
  CHECK(rejects("<uint> f(uint x) { return <x>; }"));  // tuple arity < 2
}

TEST_CASE("print/parse idempotence") {
  for (const char* src : {kDivide, kBaz}) {
    Program p1 = parseOk(src);
    std::string once = printProgram(p1);
    Program p2 = parseOk(once);
    CHECK(printProgram(p2) == once);
  }
  Program big = parseOk(R"(
enum Mode { A, B = 5 };
const uint N = 3;
ui3 Encode(ui3 slice) {
  ui3 enc = 0;
  switch (slice) {
  case 4: enc = 6; break;
  default: enc = slice[1:0] & 2;
  }
  return enc ? enc : ~enc;
}
uint g(uint x) {
  uint s = 0;
  // MASC: N + 2 iterations
  while (s < x) {
    s += A + B;
  }
  return s;
}
)");
  std::string once = printProgram(big);
  CHECK(printProgram(parseOk(once)) == once);
}
