#include "masc/value.hpp"

#include <sstream>

namespace masc {

namespace {
const Value& zeroValue() {
  static const Value zero{Rational(0)};
  return zero;
}
}  // namespace

ArrayValue::ArrayValue() : entries_(std::make_shared<std::map<Int, Value>>()) {}

const Value& ArrayValue::get(const Int& i) const {
  auto it = entries_->find(i);
  return it == entries_->end() ? zeroValue() : it->second;
}

bool ArrayValue::has(const Int& i) const { return entries_->count(i) != 0; }

ArrayValue ArrayValue::set(const Int& i, Value v) const {
  ArrayValue out;
  out.entries_ = std::make_shared<std::map<Int, Value>>(*entries_);
  (*out.entries_)[i] = std::move(v);
  return out;
}

void ArrayValue::setInPlace(const Int& i, Value v) {
  if (entries_.use_count() != 1)
    entries_ = std::make_shared<std::map<Int, Value>>(*entries_);
  (*entries_)[i] = std::move(v);
}

const std::map<Int, Value>& ArrayValue::entries() const { return *entries_; }

bool ArrayValue::operator==(const ArrayValue& other) const {
  return *entries_ == *other.entries_;
}

bool TupleValue::operator==(const TupleValue& other) const {
  return items == other.items;
}

Rational Value::numeric() const {
  if (isNumber()) return number();
  if (isRegister()) return interpret(reg());
  throw NumericError("value is not numeric");
}

bool Value::isIntegral() const {
  if (isNumber()) return denominator(number()) == 1;
  if (isRegister()) {
    const Rational v = interpret(reg());
    return denominator(v) == 1;
  }
  return false;
}

Int Value::integer() const {
  const Rational v = numeric();
  if (denominator(v) != 1) throw NumericError("value is not an integer");
  return numerator(v);
}

std::string Value::str() const {
  std::ostringstream os;
  if (isNumber()) {
    const Rational& r = number();
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
  } else if (isRegister()) {
    os << reg().raw;
  } else if (isArray()) {
    os << "{";
    bool first = true;
    for (const auto& [k, v] : array().entries()) {
      if (!first) os << " ";
      first = false;
      os << k << ":" << v.str();
    }
    os << "}";
  } else {
    os << "(";
    bool first = true;
    for (const auto& v : tuple().items) {
      if (!first) os << ", ";
      first = false;
      os << v.str();
    }
    os << ")";
  }
  return os.str();
}

bool sameDenotation(const Value& a, const Value& b) {
  if (a.isTuple() || b.isTuple()) {
    if (!a.isTuple() || !b.isTuple()) return false;
    const auto& xs = a.tuple().items;
    const auto& ys = b.tuple().items;
    if (xs.size() != ys.size()) return false;
    for (size_t i = 0; i < xs.size(); ++i)
      if (!sameDenotation(xs[i], ys[i])) return false;
    return true;
  }
  if (a.isArray() || b.isArray()) {
    if (!a.isArray() || !b.isArray()) return false;
    // Ignore entries explicitly set to the default.
    auto nonDefault = [](const ArrayValue& arr) {
      std::map<Int, const Value*> out;
      for (const auto& [k, v] : arr.entries())
        if (!(v.isNumber() && v.number() == 0) &&
            !(v.isRegister() && v.reg().raw == 0))
          out.emplace(k, &v);
      return out;
    };
    auto ea = nonDefault(a.array());
    auto eb = nonDefault(b.array());
    if (ea.size() != eb.size()) return false;
    for (const auto& [k, va] : ea) {
      auto it = eb.find(k);
      if (it == eb.end() || !sameDenotation(*va, *it->second)) return false;
    }
    return true;
  }
  // Registers compare by raw value; plain numbers by exact value. A
  // register against a number compares raw vs number, matching the
  // functional IR which carries raw integers only.
  auto numOf = [](const Value& v) {
    return v.isRegister() ? Rational(v.reg().raw) : v.number();
  };
  return numOf(a) == numOf(b);
}

}  // namespace masc
