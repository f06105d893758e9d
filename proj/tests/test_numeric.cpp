#include "doctest.h"

#include <random>

#include "masc/numeric.hpp"
#include "masc/value.hpp"

using namespace masc;

TEST_CASE("bits basics") {
  CHECK(bits(53, 4, 2) == 5);  // 53 = 0b110101
  CHECK(bits(Int(-145) * pow2(6), 7, 0) == 192);
  CHECK(bits(-9280, 7, 0) == 192);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j <= i; ++j) CHECK(bits(0, i, j) == 0);
  CHECK(bits(7, 1, 2) == 0);   // inverted range
  CHECK(bits(7, -1, 0) == 0);  // negative upper index
}

TEST_CASE("bits range and modular invariants") {
  std::mt19937_64 rng(42);
  for (int n = 0; n < 500; ++n) {
    Int x = Int(static_cast<std::int64_t>(rng())) - Int(1) << 32;
    int i = static_cast<int>(rng() % 40);
    int j = static_cast<int>(rng() % (i + 1));
    Int b = bits(x, i, j);
    CHECK(b >= 0);
    CHECK(b < pow2(i - j + 1));
    CHECK(b == bits(floorMod(x, pow2(i + 1)), i, j));
  }
}

TEST_CASE("bitn") {
  CHECK(bitn(6, 1) == 1);
  CHECK(bitn(6, 0) == 0);
  CHECK(bitn(12345, -1) == 0);
  CHECK(bitn(-1, 100) == 1);  // two's complement sign extension
}

TEST_CASE("setbits / setbitn") {
  CHECK(setbits(0, 8, 4, 2, 7) == 28);
  CHECK(setbits(255, 8, 4, 2, 0) == 227);
  CHECK(setbitn(0, 8, 3, 1) == 8);
  CHECK(setbitn(8, 8, 3, 0) == 0);
  CHECK_THROWS_AS(setbits(0, 8, 8, 2, 1), NumericError);
  CHECK_THROWS_AS(setbits(0, 8, 2, 4, 1), NumericError);

  // slice roundtrip + untouched-slice identity, exhaustively at w <= 6
  for (int w = 1; w <= 6; ++w)
    for (Int x = 0; x < pow2(w); ++x)
      for (int i = 0; i < w; ++i)
        for (int j = 0; j <= i; ++j)
          for (Int y = 0; y < pow2(i - j + 1); ++y) {
            Int s = setbits(x, w, i, j, y);
            CHECK(s < pow2(w));
            CHECK(bits(s, i, j) == bits(y, i - j, 0));
            CHECK(bits(s, w - 1, i + 1) == bits(x, w - 1, i + 1));
            if (j > 0) CHECK(bits(s, j - 1, 0) == bits(x, j - 1, 0));
          }
  for (int w = 1; w <= 6; ++w)
    for (Int x = 0; x < pow2(w); ++x)
      for (int i = 0; i < w; ++i)
        CHECK(setbitn(x, w, i, bitn(x, i)) == bits(x, w - 1, 0));
}

TEST_CASE("cat") {
  std::vector<std::pair<Int, std::int64_t>> f1{{5, 3}, {1, 2}};
  CHECK(cat(f1) == 21);
  std::vector<std::pair<Int, std::int64_t>> f2{{0, 4}, {13, 3}};
  CHECK(cat(f2) == bits(13, 2, 0));
  std::vector<std::pair<Int, std::int64_t>> f3{{1, 1}, {0, 2}, {3, 2}};
  CHECK(cat(f3) == 19);
  std::vector<std::pair<Int, std::int64_t>> bad{{1, 1}};
  CHECK_THROWS_AS(cat(bad), NumericError);
  std::vector<std::pair<Int, std::int64_t>> bad2{{1, 1}, {2, 0}};
  CHECK_THROWS_AS(cat(bad2), NumericError);
}

TEST_CASE("slice decomposition via cat, exhaustive w <= 6") {
  for (int w = 1; w <= 6; ++w)
    for (Int x = 0; x < pow2(w); ++x)
      for (int i = 0; i < w; ++i)
        for (int j = 0; j <= i; ++j) {
          std::vector<std::pair<Int, std::int64_t>> fields;
          if (w - 1 - i > 0) fields.push_back({bits(x, w - 1, i + 1), w - 1 - i});
          fields.push_back({bits(x, i, j), i - j + 1});
          if (j > 0) fields.push_back({bits(x, j - 1, 0), j});
          Int got;
          if (fields.size() >= 2) {
            got = cat(fields);
          } else {
            got = bits(fields[0].first, fields[0].second - 1, 0);
          }
          CHECK(got == bits(x, w - 1, 0));
        }
}

TEST_CASE("fl") {
  CHECK(fl(Rational(7, 2)) == 3);
  CHECK(fl(Rational(-7, 2)) == -4);
  CHECK(fl(Rational(5)) == 5);
}

TEST_CASE("intval") {
  CHECK(intval(8, 192) == -64);
  CHECK(intval(4, 7) == 7);
  CHECK(intval(4, 8) == -8);
  CHECK_THROWS_AS(intval(4, 16), NumericError);
  for (int w = 1; w <= 8; ++w)
    for (Int x = 0; x < pow2(w); ++x) {
      Int v = intval(w, x);
      CHECK(floorMod(v, pow2(w)) == x);
      CHECK(v >= -pow2(w - 1));
      CHECK(v < pow2(w - 1));
    }
}

TEST_CASE("logcmp / complement identity") {
  CHECK(logcmp(CmpOp::Lt, 2, 3) == 1);
  CHECK(logcmp(CmpOp::Lt, 3, 3) == 0);
  CHECK(logcmp(CmpOp::Eq, Rational(1, 2), Rational(1, 2)) == 1);
  // ~x at the integer level is -1-x; sliced to n bits it is 2^n-1-x.
  for (int n = 1; n <= 8; ++n)
    for (Int x = 0; x < pow2(n); ++x)
      CHECK(bits(Int(-1) - x, n - 1, 0) == pow2(n) - 1 - x);
}

TEST_CASE("convert / interpret") {
  RegisterFormat sf82{RegKind::SF, 8, 2};
  CHECK(convertRaw(Rational(-145), sf82) == 192);
  CHECK(interpret(Int(192), sf82) == Rational(-1));
  RegisterFormat ui8{RegKind::UI, 8};
  CHECK(convertRaw(Rational(100), ui8) == 100);
  CHECK(convertRaw(Rational(7, 2), RegisterFormat{RegKind::UINT}) == 3);
  CHECK(interpret(Int(5), RegisterFormat{RegKind::UI, 3}) == 5);
  CHECK(interpret(Int(5), RegisterFormat{RegKind::UF, 3, 1}) == Rational(5, 4));
  CHECK_THROWS_AS(interpret(Int(8), RegisterFormat{RegKind::UI, 3}),
                  NumericError);

  // roundtrip, exhaustive for n <= 8 over all four register kinds
  for (int n = 1; n <= 8; ++n) {
    std::vector<RegisterFormat> fmts{{RegKind::UI, n}, {RegKind::SI, n}};
    for (int m = 1; m <= n; ++m) {
      fmts.push_back({RegKind::UF, n, m});
      fmts.push_back({RegKind::SF, n, m});
    }
    for (const auto& f : fmts)
      for (Int raw = 0; raw < pow2(n); ++raw)
        CHECK(convertRaw(interpret(raw, f), f) == raw);
  }
}

TEST_CASE("array get/set laws") {
  ArrayValue empty;
  CHECK(empty.get(3) == Value(0));
  CHECK(empty.set(3, Value(7)).get(3) == Value(7));
  CHECK(empty.set(3, Value(7)).get(2) == Value(0));

  std::mt19937_64 rng(7);
  ArrayValue a;
  std::map<Int, Int> model;
  for (int n = 0; n < 300; ++n) {
    Int i = rng() % 20;
    if (rng() % 2) {
      Int v = rng() % 1000;
      a = a.set(i, Value(v));
      model[i] = v;
    } else {
      Int expect = model.count(i) ? model[i] : 0;
      CHECK(a.get(i) == Value(expect));
    }
  }
  // updates leave the original untouched
  ArrayValue before = a;
  ArrayValue after = a.set(0, Value(12345));
  CHECK(before == a);
  CHECK(after.get(0) == Value(12345));
}
