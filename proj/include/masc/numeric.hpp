// Exact arbitrary-precision arithmetic and the primitive bit-vector /
// register algebra everything else is built on.
#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace masc {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Raised by the primitive ops on precondition violations (bad widths,
// out-of-range raw values, ...).
struct NumericError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// floor(a / b) with mathematical semantics; b != 0.
Int floorDiv(const Int& a, const Int& b);

// a mod b in [0, b); b > 0.
Int floorMod(const Int& a, const Int& b);

// Greatest integer not exceeding x.
Int fl(const Rational& x);

// 2^e for e >= 0.
Int pow2(std::int64_t e);

// Bit slice x[i:j]. Total: any integers accepted, i < j or i < 0 yields 0.
Int bits(const Int& x, std::int64_t i, std::int64_t j);

// Single bit x[i]; i < 0 yields 0.
Int bitn(const Int& x, std::int64_t i);

// Replace slice i:j of the width-w vector x with y. Requires w > i >= j >= 0.
Int setbits(const Int& x, std::int64_t w, std::int64_t i, std::int64_t j,
            const Int& y);

// setbits with i = j.
Int setbitn(const Int& x, std::int64_t w, std::int64_t i, const Int& y);

// Concatenation of slices x_t[w_t-1:0], first pair most significant.
// Requires at least two fields, all widths positive.
Int cat(std::span<const std::pair<Int, std::int64_t>> fields);

// Signed integer represented by the width-w vector x; 0 <= x < 2^w.
Int intval(std::int64_t w, const Int& x);

// Bitwise operations over the infinite two's-complement representation
// (negative operands behave like ...1111 prefixes). lognot(x) = -1 - x.
Int logand(const Int& a, const Int& b);
Int logior(const Int& a, const Int& b);
Int logxor(const Int& a, const Int& b);
inline Int lognot(const Int& a) { return Int(-1) - a; }

enum class CmpOp { Lt, Le, Gt, Ge, Eq, Ne };

// 1 if the comparison holds, else 0.
int logcmp(CmpOp op, const Rational& x, const Rational& y);

enum class RegKind { UINT, INT, UI, SI, UF, SF };

// Register format: unsigned/signed integer or fixed-point of width n with
// m integer bits. UINT/INT are the unbounded kinds (no width).
struct RegisterFormat {
  RegKind kind = RegKind::UINT;
  std::int64_t width = 0;    // n, for UI/SI/UF/SF
  std::int64_t intBits = 0;  // m, for UF/SF

  bool hasWidth() const {
    return kind != RegKind::UINT && kind != RegKind::INT;
  }
  bool isSigned() const { return kind == RegKind::INT || kind == RegKind::SI ||
                                 kind == RegKind::SF; }
  std::int64_t fracBits() const {
    return kind == RegKind::UF || kind == RegKind::SF ? width - intBits : 0;
  }
  bool valid() const;
  std::string str() const;
  friend bool operator==(const RegisterFormat&, const RegisterFormat&) = default;
};

// A register value: raw bits plus the format that interprets them.
struct RawRegister {
  Int raw;
  RegisterFormat format;
  friend bool operator==(const RawRegister&, const RawRegister&) = default;
};

// Truncate an exact value into a register per the assignment rules:
// UINT/INT -> fl(v); UI/SI n -> fl(v) mod 2^n; UF/SF n,m -> fl(2^(n-m) v) mod 2^n.
Int convertRaw(const Rational& v, const RegisterFormat& f);

// Interpreted value of a raw register. Rejects out-of-range raw.
Rational interpret(const Int& raw, const RegisterFormat& f);

inline Rational interpret(const RawRegister& r) {
  return interpret(r.raw, r.format);
}

}  // namespace masc
