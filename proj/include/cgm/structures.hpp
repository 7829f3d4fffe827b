#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cgm/core.hpp"

namespace cgm {

struct PlainMonad {
  std::string name;
  std::function<Value(const Value&)> unit;
  std::function<Value(const Value&)> mult;
  std::function<Value(const ValueFn&, const Value&)> map;
  std::function<bool(const Value&)> valid;
  std::function<std::optional<Value>(Rng&, const std::vector<Value>&)> sample;
  std::vector<Value> leaves;
};

/// Monoid-graded monad. Grades are monoid carrier values.
struct GradedMonad {
  std::string name;
  Monoid monoid;
  std::function<Value(const Value&)> unit;
  std::function<Value(const Value& m, const Value& n, const Value&)> mult;
  std::function<Value(const Value& m, const ValueFn&, const Value&)> map;
  /// Empty when the monoid is unordered.
  std::function<Value(const Value& m, const Value& n, const Value&)> approx;
  std::function<bool(const Value& m, const Value&)> valid;
  std::function<std::optional<Value>(const Value& m, Rng&, const std::vector<Value>&)> sample;
  /// Every payload at grade m over the given carried values; empty when unset.
  std::function<std::vector<Value>(const Value& m, const std::vector<Value>&)> enumerate;
  std::vector<Value> leaves;
};

/// P : I^op x I -> [C, C] with unit and multiplication.
struct ParameterisedMonad {
  std::string name;
  IndexCategory index = terminal_category();
  std::function<Value(const ObjectId&, const Value&)> eta;
  std::function<Value(const ObjectId& i, const ObjectId& j, const ObjectId& k, const Value&)> mu;
  /// P(f, g) h for f : I' -> I and g : J -> J', taking P(I, J) to P(I', J').
  std::function<Value(const Morphism& f, const Morphism& g, const ValueFn& h, const Value&)> morph;
  std::function<bool(const ObjectId&, const ObjectId&, const Value&)> valid;
  std::function<std::optional<Value>(const ObjectId&, const ObjectId&, Rng&, const std::vector<Value>&)> sample;
  /// Every P(I, J) payload over the given carried values; empty when not enumerable.
  std::function<std::vector<Value>(const ObjectId&, const ObjectId&, const std::vector<Value>&)> enumerate;
  /// Size of that enumeration, saturating at SIZE_MAX.
  std::function<std::size_t(const ObjectId&, const ObjectId&, std::size_t carried)> count;
  std::vector<Value> leaves;

  Value map(const ObjectId& i, const ObjectId& j, const ValueFn& h, const Value& v) const {
    return morph(index.identity(i), index.identity(j), h, v);
  }
};

}  // namespace cgm
