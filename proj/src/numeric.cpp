#include "masc/numeric.hpp"

#include <boost/multiprecision/integer.hpp>

namespace masc {

Int floorDiv(const Int& a, const Int& b) {
  if (b == 0) throw NumericError("division by zero");
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int floorMod(const Int& a, const Int& b) {
  if (b <= 0) throw NumericError("mod requires a positive modulus");
  Int r = a % b;
  if (r < 0) r += b;
  return r;
}

Int fl(const Rational& x) {
  return floorDiv(numerator(x), denominator(x));
}

Int pow2(std::int64_t e) {
  if (e < 0) throw NumericError("pow2 requires a nonnegative exponent");
  return Int(1) << e;
}

Int bits(const Int& x, std::int64_t i, std::int64_t j) {
  if (i < j || i < 0) return 0;
  Int shifted = j >= 0 ? Int(x >> static_cast<unsigned>(j))
                       : Int(x << static_cast<unsigned>(-j));
  return floorMod(shifted, pow2(i - j + 1));
}

Int bitn(const Int& x, std::int64_t i) { return bits(x, i, i); }

Int setbits(const Int& x, std::int64_t w, std::int64_t i, std::int64_t j,
            const Int& y) {
  if (!(w > i && i >= j && j >= 0))
    throw NumericError("setbits requires w > i >= j >= 0");
  return bits(x, w - 1, i + 1) * pow2(i + 1) + bits(y, i - j, 0) * pow2(j) +
         bits(x, j - 1, 0);
}

Int setbitn(const Int& x, std::int64_t w, std::int64_t i, const Int& y) {
  return setbits(x, w, i, i, y);
}

Int cat(std::span<const std::pair<Int, std::int64_t>> fields) {
  if (fields.size() < 2) throw NumericError("cat requires at least two fields");
  Int acc = 0;
  for (const auto& [x, w] : fields) {
    if (w <= 0) throw NumericError("cat requires positive field widths");
    acc = (acc << static_cast<unsigned>(w)) + bits(x, w - 1, 0);
  }
  return acc;
}

Int intval(std::int64_t w, const Int& x) {
  if (w <= 0) throw NumericError("intval requires a positive width");
  if (x < 0 || x >= pow2(w)) throw NumericError("intval: raw value out of range");
  return bitn(x, w - 1) == 1 ? Int(x - pow2(w)) : x;
}

Int logand(const Int& a, const Int& b) {
  if (a >= 0 && b >= 0) return a & b;
  if (a < 0 && b < 0) return Int(-1) - (Int(Int(-1) - a) | Int(Int(-1) - b));
  // one negative: clear the complement's bits from the nonnegative operand
  const Int& pos = a >= 0 ? a : b;
  Int comp = Int(-1) - (a >= 0 ? b : a);
  return pos - Int(pos & comp);
}

Int logior(const Int& a, const Int& b) {
  if (a >= 0 && b >= 0) return a | b;
  return Int(-1) - logand(Int(-1) - a, Int(-1) - b);
}

Int logxor(const Int& a, const Int& b) {
  if (a >= 0 && b >= 0) return a ^ b;
  if (a < 0 && b < 0) return Int(Int(-1) - a) ^ Int(Int(-1) - b);
  if (a < 0) return Int(-1) - Int(Int(-1) - a ^ b);
  return Int(-1) - Int(a ^ Int(-1) - b);
}

int logcmp(CmpOp op, const Rational& x, const Rational& y) {
  switch (op) {
    case CmpOp::Lt: return x < y;
    case CmpOp::Le: return x <= y;
    case CmpOp::Gt: return x > y;
    case CmpOp::Ge: return x >= y;
    case CmpOp::Eq: return x == y;
    case CmpOp::Ne: return x != y;
  }
  return 0;
}

bool RegisterFormat::valid() const {
  switch (kind) {
    case RegKind::UINT:
    case RegKind::INT:
      return width == 0 && intBits == 0;
    case RegKind::UI:
    case RegKind::SI:
      return width >= 1;
    case RegKind::UF:
    case RegKind::SF:
      return width >= intBits && intBits > 0;
  }
  return false;
}

std::string RegisterFormat::str() const {
  switch (kind) {
    case RegKind::UINT: return "uint";
    case RegKind::INT: return "int";
    case RegKind::UI: return "ui" + std::to_string(width);
    case RegKind::SI: return "si" + std::to_string(width);
    case RegKind::UF:
      return "uf" + std::to_string(width) + "i" + std::to_string(intBits);
    case RegKind::SF:
      return "sf" + std::to_string(width) + "i" + std::to_string(intBits);
  }
  return "?";
}

Int convertRaw(const Rational& v, const RegisterFormat& f) {
  switch (f.kind) {
    case RegKind::UINT:
    case RegKind::INT:
      return fl(v);
    case RegKind::UI:
    case RegKind::SI:
      return floorMod(fl(v), pow2(f.width));
    case RegKind::UF:
    case RegKind::SF:
      return floorMod(fl(v * Rational(pow2(f.fracBits()))), pow2(f.width));
  }
  return 0;
}

Rational interpret(const Int& raw, const RegisterFormat& f) {
  if (f.hasWidth() && (raw < 0 || raw >= pow2(f.width)))
    throw NumericError("raw value out of range for " + f.str());
  switch (f.kind) {
    case RegKind::UINT:
    case RegKind::INT:
      return raw;
    case RegKind::UI:
      return raw;
    case RegKind::SI:
      return intval(f.width, raw);
    case RegKind::UF:
      return Rational(raw, pow2(f.fracBits()));
    case RegKind::SF:
      return Rational(intval(f.width, raw), pow2(f.fracBits()));
  }
  return 0;
}

}  // namespace masc
