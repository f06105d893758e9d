#include <random>

#include "doctest.h"
#include "masc/booth.hpp"
#include "masc/bundled.hpp"
#include "masc/interp.hpp"

using namespace masc;
namespace bo = masc::booth;

namespace {

// Sign/magnitude three-bit encoding of a Booth digit, as produced by the
// bundled Encode function.
Int encodeDigit(const Int& theta) {
  if (theta >= 0) return theta;
  return Int(4) - theta;  // 4 | magnitude
}

Int rawOf(const Value& v) {
  return v.isRegister() ? v.reg().raw : v.integer();
}

}  // namespace

TEST_CASE("booth digits recompose the multiplier") {
  for (std::int64_t m = 1; m <= 4; ++m) {
    for (Int y = 0; y < pow2(2 * m); ++y) {
      Int acc = 0;
      for (std::int64_t i = 0; i < m; ++i) {
        Int th = bo::theta(i, y);
        CHECK(th >= -2);
        CHECK(th <= 2);
        acc += th * pow2(2 * i);
      }
      // Digit expansion equals the two's-complement reading of y[2m-1:0].
      CHECK(acc == y - bitn(y, 2 * m - 1) * pow2(2 * m));
    }
  }
}

TEST_CASE("bmux4 selects 0, x, 2x, or an n-bit complement") {
  // y = 3 gives theta_0 = -1; y = 1 gives theta_0 = 1; y = 2 gives 1;
  // y = 4 mod 16 covers theta_1.
  CHECK(bo::theta(0, Int(3)) == -1);
  CHECK(bo::bmux4(0, Int(1), Int(3), 2) == bits(Int(-2), 1, 0));  // ~x = 2
  CHECK(bo::bmux4(0, Int(0), Int(3), 2) == 3);                    // ~0
  CHECK(bo::bmux4(0, Int(1), Int(1), 2) == 1);                    // +x
  CHECK(bo::bmux4(0, Int(1), Int(0), 2) == 0);                    // theta = 0

  // Over the whole small grid: bmux4 is one of the five candidates.
  for (std::int64_t n = 2; n <= 4; ++n)
    for (Int x = 0; x < pow2(n - 1); ++x)
      for (Int y = 0; y < 16; ++y) {
        Int th = bo::theta(0, y);
        Int b = bo::bmux4(0, x, y, n);
        if (th == 0) CHECK(b == 0);
        if (th == 1) CHECK(b == x);
        if (th == 2) CHECK(b == bits(2 * x, n - 1, 0));
        if (th == -1) CHECK(b == pow2(n) - 1 - x);
        if (th == -2) CHECK(b == bits(lognot(2 * x), n - 1, 0));
      }
}

TEST_CASE("pp4 frame bits and the pp4p correction") {
  // n=2, m=1, x=1, y=1: theta_0 = 1, B_0 = 1, neg_0 = 0:
  // pp4(0) = 1 + (1-0)*2^2 + 2^3 = 13.
  CHECK(bo::pp4(0, Int(1), Int(1), 1, 2) == 13);
  CHECK(bo::pp4p(0, Int(1), Int(1), 1, 2) == 13 + 4);

  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    std::int64_t n = 2 + std::int64_t(rng() % 6);
    std::int64_t m = 1 + std::int64_t(rng() % 4);
    Int x = Int(rng()) % pow2(n - 1);
    Int y = Int(rng()) % pow2(2 * m - 1);
    CHECK(bo::pp4p(0, x, y, m, n) - bo::pp4(0, x, y, m, n) == pow2(n));
    for (std::int64_t i = 1; i < m; ++i)
      CHECK(bo::pp4p(i, x, y, m, n) == bo::pp4(i, x, y, m, n));
  }

  // theta_i = 0 for i != 0 leaves only the constant frame bits.
  // y = 0 makes every digit 0.
  for (std::int64_t i = 1; i < 3; ++i) {
    std::int64_t n = 4, m = 3;
    Int frame = pow2(2 * i + n) + pow2(2 * i + n + 1);
    CHECK(bo::pp4(i, Int(5), Int(0), m, n) == frame);
  }

  CHECK_THROWS_AS(bo::pp4(3, Int(1), Int(1), 3, 4), NumericError);
  CHECK_THROWS_AS(bo::pp4(-1, Int(1), Int(1), 3, 4), NumericError);
}

TEST_CASE("booth product identities over exhaustive small grids") {
  for (std::int64_t n = 2; n <= 5; ++n)
    for (std::int64_t m = 1; m <= 3; ++m)
      for (Int x = 0; x < pow2(n - 1); ++x)
        for (Int y = 0; y < pow2(2 * m - 1); ++y) {
          Int s = bo::sumPP4(x, y, m, n);
          Int sp = bo::sumPP4p(x, y, m, n);
          CHECK(pow2(n) + s == pow2(n + 2 * m) + x * y);
          CHECK(bits(sp, n + 2 * m - 1, 0) == x * y);
        }
}

TEST_CASE("compressors satisfy the mod-2^64 sum contract") {
  auto [s0, c0] = bo::compress32(Int(9), Int(0), Int(0));
  CHECK(s0 == 9);
  CHECK(c0 == 0);
  auto [s1, c1] = bo::compress32(Int(1), Int(1), Int(1));
  CHECK(s1 == 1);
  CHECK(c1 == 2);

  std::mt19937_64 rng(11);
  auto r64 = [&] { return Int(rng()); };
  for (int t = 0; t < 2000; ++t) {
    Int a = r64(), b = r64(), c = r64(), d = r64();
    auto [s, cy] = bo::compress32(a, b, c);
    CHECK(bits(s + cy, 63, 0) == bits(a + b + c, 63, 0));
    auto [s4, cy4] = bo::compress42(a, b, c, d);
    CHECK(bits(s4 + cy4, 63, 0) == bits(a + b + c + d, 63, 0));
  }

  // The carry of a 3:2 stage on in-range inputs is itself in range.
  auto [sm, cm] = bo::compress32(pow2(64) - 1, pow2(64) - 1, pow2(64) - 1);
  CHECK(sm == pow2(64) - 1);
  CHECK(cm == bits(2 * (pow2(64) - 1), 63, 0));
}

TEST_CASE("bundled multiplier stages match the partial-product oracle") {
  Program p = loadBundled("imul");
  std::mt19937_64 rng(2024);
  std::vector<std::pair<Int, Int>> cases = {
      {0, 0}, {1, 1}, {pow2(32) - 1, pow2(32) - 1}, {pow2(31), 3}};
  for (int t = 0; t < 12; ++t)
    cases.emplace_back(Int(rng() % (std::uint64_t(1) << 32)),
                       Int(rng() % (std::uint64_t(1) << 32)));

  for (const auto& [s1, s2] : cases) {
    CAPTURE(s1.str());
    CAPTURE(s2.str());
    Value a1(RawRegister{s1, {RegKind::UI, 32, 32}});
    Value a2(RawRegister{s2, {RegKind::UI, 32, 32}});

    // Booth(s1)[k] is the three-bit encoding of theta(k, s1).
    Value bd = run(p, "Booth", {a1});
    REQUIRE(bd.isArray());
    for (std::int64_t k = 0; k < 17; ++k)
      CHECK(rawOf(bd.array().get(k)) == encodeDigit(bo::theta(k, s1)));

    // PartialProducts(bd, s2)[k] is bmux4 with n = 33.
    Value pp = run(p, "PartialProducts", {bd, a2});
    REQUIRE(pp.isArray());
    for (std::int64_t k = 0; k < 17; ++k)
      CHECK(rawOf(pp.array().get(k)) == bo::bmux4(k, s2, s1, 33));

    // Align(bd, pp)[k] is the 64-bit slice of pp4p with m = 17, n = 33.
    Value tble = run(p, "Align", {bd, pp});
    REQUIRE(tble.isArray());
    for (std::int64_t k = 0; k < 17; ++k)
      CHECK(rawOf(tble.array().get(k)) ==
            bits(bo::pp4p(k, s2, s1, 17, 33), 63, 0));

    // Sum is the 64-bit truncated sum of the table.
    Int entries[17];
    for (std::int64_t k = 0; k < 17; ++k)
      entries[k] = rawOf(tble.array().get(k));
    Value total = run(p, "Sum", {tble});
    CHECK(rawOf(total) == bo::sumSimple(entries, 17));

    // End to end: the product (which fits in 64 bits).
    Value prod = run(p, "Imul", {a1, a2});
    CHECK(rawOf(prod) == s1 * s2);
  }
}

TEST_CASE("sumSimple truncates at each step") {
  Int entries[3] = {pow2(64) - 1, Int(5), Int(0)};
  CHECK(bo::sumSimple(entries, 1) == pow2(64) - 1);
  CHECK(bo::sumSimple(entries, 2) == 4);
  CHECK(bo::sumSimple(entries, 3) == 4);
}
