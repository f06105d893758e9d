// Runtime values: exact numbers, registers, immutable arrays, tuples.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "masc/numeric.hpp"

namespace masc {

class Value;

// Immutable index -> value map with a default of 0. Updates produce a new
// array; structurally shared with the original.
class ArrayValue {
 public:
  ArrayValue();

  // Value at index i, or the default (0) when absent.
  const Value& get(const Int& i) const;
  bool has(const Int& i) const;

  // Functional update: a new array with index i set to v.
  ArrayValue set(const Int& i, Value v) const;

  // In-place update when this array holds the only reference to its
  // storage; falls back to a copy otherwise.
  void setInPlace(const Int& i, Value v);

  const std::map<Int, Value>& entries() const;
  bool operator==(const ArrayValue& other) const;

 private:
  std::shared_ptr<std::map<Int, Value>> entries_;
};

struct TupleValue {
  std::vector<Value> items;
  bool operator==(const TupleValue&) const;
};

class Value {
 public:
  Value() : v_(Rational(0)) {}
  Value(Rational r) : v_(std::move(r)) {}
  Value(Int i) : v_(Rational(std::move(i))) {}
  Value(long long i) : v_(Rational(i)) {}
  Value(RawRegister r) : v_(std::move(r)) {}
  Value(ArrayValue a) : v_(std::move(a)) {}
  Value(TupleValue t) : v_(std::move(t)) {}

  bool isNumber() const { return std::holds_alternative<Rational>(v_); }
  bool isRegister() const { return std::holds_alternative<RawRegister>(v_); }
  bool isArray() const { return std::holds_alternative<ArrayValue>(v_); }
  bool isTuple() const { return std::holds_alternative<TupleValue>(v_); }

  const Rational& number() const { return std::get<Rational>(v_); }
  const RawRegister& reg() const { return std::get<RawRegister>(v_); }
  const ArrayValue& array() const { return std::get<ArrayValue>(v_); }
  ArrayValue& array() { return std::get<ArrayValue>(v_); }
  const TupleValue& tuple() const { return std::get<TupleValue>(v_); }

  // Interpreted numeric value: numbers as-is, registers via their format.
  Rational numeric() const;
  // True for numbers/registers whose interpreted value is an integer.
  bool isIntegral() const;
  // Integer value; throws if not integral.
  Int integer() const;

  // Decimal rendering; registers render their raw value, rationals as p/q,
  // arrays as {i:v ...}, tuples as (v, ...).
  std::string str() const;

  bool operator==(const Value& other) const { return v_ == other.v_; }

 private:
  std::variant<Rational, RawRegister, ArrayValue, TupleValue> v_;
};

// Equality up to representation: registers compare by raw value against
// plain integers, arrays drop default-valued entries, tuples elementwise.
// Used to compare interpreter results with functional-IR results.
bool sameDenotation(const Value& a, const Value& b);

}  // namespace masc
