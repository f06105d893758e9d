#include "doctest.h"

#include "masc/checker.hpp"
#include "masc/interp.hpp"
#include "masc/parser.hpp"

using namespace masc;

namespace {

Program compile(const std::string& src) {
  Diagnostics diags;
  Program p = parseProgram(src, diags);
  REQUIRE_MESSAGE(!diags.hasErrors(), diags.str());
  rewriteBoundedLoops(p, diags);
  REQUIRE_MESSAGE(!diags.hasErrors(), diags.str());
  checkProgram(p, diags);
  REQUIRE_MESSAGE(!diags.hasErrors(), diags.str());
  return p;
}

}  // namespace

TEST_CASE("division by repeated subtraction") {
  Program p = compile(R"(
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
)");
  Value out = run(p, "Divide", {Value(Int(23)), Value(Int(5))});
  REQUIRE(out.isTuple());
  CHECK(out.tuple().items[0].integer() == 4);
  CHECK(out.tuple().items[1].integer() == 3);

  CHECK_THROWS_AS(run(p, "Divide", {Value(Int(23)), Value(Int(0))}),
                  AssertionFailure);
  try {
    run(p, "Divide", {Value(Int(1)), Value(Int(0))});
  } catch (const AssertionFailure& e) {
    CHECK(e.function == "Divide");
  }
}

TEST_CASE("fixed-point arithmetic uses interpreted values") {
  // x raw 200 as sf8i2 means intval(8,200)/2^6 = -56/64 = -7/8.
  // y raw 237 as uf8i2: y[4:2] = bits(237,4,2) = 3 (a raw subrange).
  // z = fl(3 * -7/8) mod 2^8 = -3 mod 256 = 253.
  Program p = compile(R"(
ui8 f(sf8i2 x, uf8i2 y) {
  ui8 z = 3;
  z = y[4:2] * x;
  return z;
}
)");
  Value out = run(p, "f", {Value(RawRegister{200, {RegKind::SF, 8, 2}}),
                           Value(RawRegister{237, {RegKind::UF, 8, 2}})});
  REQUIRE(out.isRegister());
  CHECK(out.reg().raw == 253);
}

TEST_CASE("arrays have value semantics") {
  Program p = compile(R"(
int[8] Sum8(int a[8], int b[8]) {
  for (uint i = 0; i < 8; i++) {
    a[i] += b[i];
  }
  return a;
}
int caller(int x) {
  int a[8], b[8];
  a[0] = x;
  b[0] = 1;
  int c[8];
  c = Sum8(a, b);
  return a[0] + c[0];
}
)");
  Value out = run(p, "caller", {Value(Int(10))});
  CHECK(out.integer() == 21);  // a unchanged (10), c[0] = 11
}

TEST_CASE("register truncation and wraparound") {
  Program p = compile(R"(
ui4 f(uint x) {
  ui4 r = x;
  return r;
}
si4 g(int x) {
  si4 r = x;
  return r;
}
)");
  CHECK(run(p, "f", {Value(Int(21))}).reg().raw == 5);    // 21 mod 16
  CHECK(run(p, "g", {Value(Int(-3))}).reg().raw == 13);   // -3 mod 16
  CHECK(interpret(run(p, "g", {Value(Int(-3))}).reg()) == -3);
}

TEST_CASE("bit reference and subrange assignment") {
  Program p = compile(R"(
ui8 f(ui8 x) {
  x[0] = 1;
  x[7:4] = 10;
  return x;
}
)");
  // x = 0 -> set bit 0 -> 1; set [7:4] = 10 -> 0xA1
  CHECK(run(p, "f", {Value(Int(0))}).reg().raw == 0xA1);
}

TEST_CASE("switch selects on the subject value") {
  Program p = compile(R"(
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
)");
  int expect[8] = {0, 1, 1, 2, 6, 5, 5, 0};
  for (int s = 0; s < 8; ++s)
    CHECK(run(p, "Encode", {Value(Int(s))}).reg().raw == expect[s]);
}

TEST_CASE("nested loops (baz)") {
  Program p = compile(R"(
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
)");
  // x=3: u=3, v=9. First pass: v=8, nine inner steps of u = 3 + 3u
  // give 12,39,...,88572; then u < v fails, so the result is 88572 + 8.
  CHECK(run(p, "baz", {Value(Int(3)), Value(Int(1)), Value(Int(2))}).integer() ==
        88580);
}

TEST_CASE("shifts, mod, bitwise on registers") {
  Program p = compile(R"(
uint f(ui8 a, ui8 b) {
  return (a & b) + (a | b) + (a ^ b) + (~a) + (a << 2) + (b >> 1) + (a % 5);
}
)");
  // a=12, b=10: and=8 or=14 xor=6 not=243 shl=48 shr=5 mod=2 -> 326
  CHECK(run(p, "f", {Value(RawRegister{12, {RegKind::UI, 8}}),
                     Value(RawRegister{10, {RegKind::UI, 8}})})
            .integer() == 326);
}

TEST_CASE("struct field access round-trips") {
  Program p = compile(R"(
struct Pt { uint x; uint y; };
uint f(uint a) {
  Pt p;
  p.x = a;
  p.y = p.x + 1;
  return p.x + p.y;
}
)");
  CHECK(run(p, "f", {Value(Int(5))}).integer() == 11);
}

TEST_CASE("runtime range violations raise errors") {
  Program p = compile(R"(
uint f(ui8 x, uint i) {
  return x[i:2];
}
)");
  CHECK_THROWS_AS(run(p, "f", {Value(RawRegister{7, {RegKind::UI, 8}}),
                               Value(Int(9))}),
                  RuntimeError);
  CHECK(run(p, "f", {Value(RawRegister{0xFF, {RegKind::UI, 8}}),
                     Value(Int(4))})
            .integer() == 7);
}

TEST_CASE("out-of-bounds array writes are errors, reads warn") {
  Program p = compile(R"(
uint f(uint a[4], uint i) {
  a[i] = 1;
  return a[i];
}
)");
  CHECK_THROWS_AS(run(p, "f", {Value(ArrayValue{}), Value(Int(4))}),
                  RuntimeError);
  Interp interp(p);
  Program p2 = compile(R"(
uint g(uint a[4], uint i) {
  return a[i];
}
)");
  Interp i2(p2);
  i2.run("g", {Value(ArrayValue{}), Value(Int(7))});
  CHECK(i2.warnings().items().size() == 1);
}
