#include "masc/booth.hpp"

#include <stdexcept>

namespace masc::booth {

Int theta(std::int64_t i, const Int& y) {
  return bitn(y, 2 * i - 1) + bitn(y, 2 * i) - 2 * bitn(y, 2 * i + 1);
}

Int bmux4(std::int64_t i, const Int& x, const Int& y, std::int64_t n) {
  Int t = theta(i, y);
  if (t == 1) return x;
  if (t == -1) return bits(lognot(x), n - 1, 0);
  if (t == 2) return 2 * x;
  if (t == -2) return bits(lognot(2 * x), n - 1, 0);
  return 0;
}

int neg(std::int64_t i, const Int& y) { return theta(i, y) < 0 ? 1 : 0; }

Int pp4(std::int64_t i, const Int& x, const Int& y, std::int64_t m,
        std::int64_t n) {
  if (i < 0 || i >= m) throw NumericError("pp4: row index out of range");
  Int b = bmux4(i, x, y, n);
  if (i == 0) {
    // { 2(m-1)'b0, 1'b1, ~neg_0, B_0[n-1:0] }
    return b + Int(1 - neg(0, y)) * pow2(n) + pow2(n + 1);
  }
  // { 2(m-i-1)'b0, 1'b1, ~neg_i, B_i[n-1:0], 1'b0, neg_{i-1}, 2(i-1)'b0 }
  return Int(neg(i - 1, y)) * pow2(2 * i - 2) + b * pow2(2 * i) +
         Int(1 - neg(i, y)) * pow2(2 * i + n) + pow2(2 * i + n + 1);
}

Int pp4p(std::int64_t i, const Int& x, const Int& y, std::int64_t m,
         std::int64_t n) {
  // row 0 absorbs the 2^n correction term of the sum identity
  if (i == 0) return pp4(0, x, y, m, n) + pow2(n);
  return pp4(i, x, y, m, n);
}

Int sumPP4(const Int& x, const Int& y, std::int64_t m, std::int64_t n) {
  Int s = 0;
  for (std::int64_t i = 0; i < m; ++i) s += pp4(i, x, y, m, n);
  return s;
}

Int sumPP4p(const Int& x, const Int& y, std::int64_t m, std::int64_t n) {
  Int s = 0;
  for (std::int64_t i = 0; i < m; ++i) s += pp4p(i, x, y, m, n);
  return s;
}

namespace {
void check64(const Int& v, const char* what) {
  if (v < 0 || v >= pow2(64))
    throw NumericError(std::string(what) + ": input is not a 64-bit value");
}
}  // namespace

std::pair<Int, Int> compress32(const Int& a, const Int& b, const Int& c) {
  check64(a, "compress32");
  check64(b, "compress32");
  check64(c, "compress32");
  Int s = logxor(logxor(a, b), c);
  Int maj = logior(logior(logand(a, b), logand(a, c)), logand(b, c));
  return {std::move(s), bits(2 * maj, 63, 0)};
}

std::pair<Int, Int> compress42(const Int& a, const Int& b, const Int& c,
                               const Int& d) {
  auto [s1, c1] = compress32(a, b, c);
  return compress32(s1, c1, d);
}

Int sumSimple(const Int* entries, std::size_t k) {
  Int s = 0;
  for (std::size_t i = 0; i < k; ++i) s += entries[i];
  return bits(s, 63, 0);
}

}  // namespace masc::booth
