#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cgm {

using Rational = boost::multiprecision::cpp_rational;

Rational parse_rational(const std::string& text);
std::string rational_to_string(const Rational& r);

/// Immutable, structurally compared value. Every payload that flows through a
/// graded computation lives in this one universe.
///
/// Nodes are shared, so copying a Value is a reference-count bump and large
/// nested payloads (tables of tables) cost nothing to pass around.
class Value {
 public:
  enum class Kind { Unit, Int, Rat, Bool, Str, Pair, Seq, Tag, Table, Dist };

  using Entry = std::pair<Value, Value>;
  using Weighted = std::pair<Value, Rational>;

  Value();  // unit

  static Value unit() { return Value(); }
  static Value integer(std::int64_t v);
  static Value rational(Rational v);
  static Value boolean(bool v);
  static Value str(std::string v);
  static Value pair(Value a, Value b);
  static Value seq(std::vector<Value> items);
  static Value tag(std::string name, Value inner);
  /// Finite function table. Keys must be unique; entries are stored sorted.
  static Value table(std::vector<Entry> entries);
  /// Finite-support distribution. Duplicate support points are merged,
  /// zero weights dropped; the total must be exactly one.
  static Value dist(std::vector<Weighted> weights);
  static Value point(Value v) { return dist({{std::move(v), Rational(1)}}); }

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }

  std::int64_t as_int() const;
  const Rational& as_rat() const;
  bool as_bool() const;
  const std::string& as_str() const;
  const Value& first() const;
  const Value& second() const;
  const std::vector<Value>& items() const;
  const std::string& tag_name() const;
  const Value& tag_value() const;
  const std::vector<Entry>& entries() const;
  const std::vector<Weighted>& weights() const;

  /// Table lookup; nullptr when the key is absent.
  const Value* lookup(const Value& key) const;
  /// Table lookup that throws MalformedPayload on a missing key.
  const Value& at(const Value& key) const;

  std::strong_ordering operator<=>(const Value& other) const;
  bool operator==(const Value& other) const;

  std::size_t hash() const;
  std::string to_string() const;

  struct Node;

 private:
  explicit Value(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

using ValueFn = std::function<Value(const Value&)>;

struct ValueHash {
  std::size_t operator()(const Value& v) const { return v.hash(); }
};

/// Accumulates weighted outcomes and produces a canonical distribution.
class DistBuilder {
 public:
  void add(const Value& v, const Rational& w);
  Value build() const;

 private:
  std::vector<Value::Weighted> items_;
};

inline std::ostream& operator<<(std::ostream& os, const Value& v) { return os << v.to_string(); }

}  // namespace cgm
