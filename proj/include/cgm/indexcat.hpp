#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cgm/report.hpp"
#include "cgm/value.hpp"

namespace cgm {

/// Cap on generator-path length when a free category is enumerated.
inline constexpr std::size_t kMaxPathLength = 4;

/// Object of an index category. Plain objects are names; product objects are
/// pairs of their components.
class ObjectId {
 public:
  ObjectId() = default;
  explicit ObjectId(std::string name) : value_(Value::str(std::move(name))) {}
  explicit ObjectId(Value v) : value_(std::move(v)) {}

  const Value& value() const { return value_; }
  std::string name() const;

  auto operator<=>(const ObjectId& o) const { return value_ <=> o.value_; }
  bool operator==(const ObjectId& o) const { return value_ == o.value_; }

 private:
  Value value_ = Value::str("");
};

/// A morphism: source, target and a structural word. Equality is structural
/// on all three.
class Morphism {
 public:
  enum class Word { Identity, Path, MonoidElem, Pair, Inj1, Inj2, Named, Product };

  static Morphism identity(const ObjectId& object);
  static Morphism path(const ObjectId& src, const ObjectId& tgt, std::vector<std::string> gens);
  static Morphism monoid_elem(const ObjectId& object, Value elem);
  static Morphism pair(const ObjectId& src, const ObjectId& tgt);
  static Morphism inj1(const Morphism& inner);
  static Morphism inj2(const ObjectId& src, const ObjectId& tgt);
  static Morphism named(const ObjectId& src, const ObjectId& tgt, std::string name);
  static Morphism product(const Morphism& left, const Morphism& right);

  const ObjectId& src() const { return src_; }
  const ObjectId& tgt() const { return tgt_; }
  Word word() const { return word_; }

  std::vector<std::string> generators() const;  // Path
  const Value& elem() const;                     // MonoidElem
  const std::string& label() const;              // Named
  const Morphism& inner() const;                 // Inj1
  const Morphism& left() const;                  // Product
  const Morphism& right() const;                 // Product

  /// Compact rendering of the word, e.g. `lock;get;put;unlock`.
  std::string to_string() const;
  /// `word : src -> tgt`
  std::string describe() const;

  std::strong_ordering operator<=>(const Morphism& o) const;
  bool operator==(const Morphism& o) const { return (*this <=> o) == 0; }

 private:
  Morphism(ObjectId src, ObjectId tgt, Word word, Value data,
           std::shared_ptr<const std::vector<Morphism>> parts = nullptr)
      : src_(std::move(src)), tgt_(std::move(tgt)), word_(word), data_(std::move(data)),
        parts_(std::move(parts)) {}

  ObjectId src_;
  ObjectId tgt_;
  Word word_;
  Value data_;
  std::shared_ptr<const std::vector<Morphism>> parts_;
};

/// A monoid given by a total operation. Carriers may be infinite, so law
/// checks use `samples` instead of exhaustion.
struct Monoid {
  std::string name;
  std::function<Value(const Value&, const Value&)> op;
  Value unit;
  std::vector<Value> samples;
  std::function<bool(const Value&)> contains;
  std::function<bool(const Value&, const Value&)> leq;  // empty when unordered
};

Monoid nat_plus(std::vector<Value> samples = {});
Monoid nat_times(std::vector<Value> samples = {});
/// Rationals in [0,1] under addition saturating at 1.
Monoid prob_sat(std::vector<Value> samples = {});
Rational saturating_add(const Rational& a, const Rational& b);

struct Edge {
  std::string name;
  ObjectId src;
  ObjectId tgt;
};

struct TableMorphism {
  std::string name;
  ObjectId src;
  ObjectId tgt;
};

enum class CategoryKind {
  FiniteTable,
  FreeOnGraph,
  OneObjectMonoid,
  Indiscrete,
  Discrete,
  PairCompletion,
  Product
};

std::string kind_name(CategoryKind kind);

class IndexCategory {
 public:
  class Impl;

  CategoryKind kind() const;
  const std::string& name() const;

  bool enumerable() const;
  /// All objects; throws SymbolicObjects when the universe is not enumerable.
  std::vector<ObjectId> objects() const;
  bool has_object(const ObjectId& object) const;
  bool contains(const Morphism& m) const;

  Morphism identity(const ObjectId& object) const;
  /// g after f. Throws CompositionMismatch or ForeignMorphism.
  Morphism compose(const Morphism& g, const Morphism& f) const;

  /// Every morphism (free-category paths up to `max_path_length`, monoid
  /// carriers via their declared samples).
  std::vector<Morphism> morphisms(std::size_t max_path_length = kMaxPathLength) const;
  std::vector<Morphism> homset(const ObjectId& src, const ObjectId& tgt,
                               std::size_t max_path_length = kMaxPathLength) const;

  const Monoid& monoid() const;           // OneObjectMonoid
  const IndexCategory& inner() const;     // Discrete, Indiscrete (when built from one), PairCompletion
  const IndexCategory& left() const;      // Product
  const IndexCategory& right() const;     // Product
  const std::vector<Edge>& edges() const; // FreeOnGraph

  explicit IndexCategory(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

 private:
  std::shared_ptr<const Impl> impl_;
};

/// The single object of a one-object category.
ObjectId star();

IndexCategory terminal_category();
IndexCategory free_category(std::vector<ObjectId> objects, std::vector<Edge> edges);
IndexCategory finite_table_category(
    std::vector<ObjectId> objects, std::vector<TableMorphism> morphisms,
    std::map<std::pair<std::string, std::string>, std::string> composition);
IndexCategory monoid_to_category(Monoid monoid);
IndexCategory discretise(const IndexCategory& c);
IndexCategory indiscretise(const IndexCategory& c);
/// Indiscrete category over a non-enumerable object universe.
IndexCategory indiscrete_symbolic(std::string name, std::function<bool(const ObjectId&)> is_object);
IndexCategory pair_completion(const IndexCategory& c);
IndexCategory product(const IndexCategory& left, const IndexCategory& right);

/// The mutual-exclusion lock protocol: free/critical with lock, unlock, get, put.
IndexCategory lock_category();

struct TwoCategory {
  IndexCategory base;
  std::function<bool(const Morphism&, const Morphism&)> leq;
};

TwoCategory pomonoid_to_2category(Monoid monoid);
/// Only identity 2-cells.
TwoCategory trivial_2category(IndexCategory base);

struct WideSubcategory {
  IndexCategory parent;
  std::function<bool(const Morphism&)> member;
};

WideSubcategory whole(const IndexCategory& c);
WideSubcategory identities_only(const IndexCategory& c);

/// Associativity and unit laws over all enumerable composable triples.
LawReport check_category_laws(const IndexCategory& c, std::size_t max_path_length = kMaxPathLength);
/// Reflexivity, transitivity and monotonicity of the 2-cell relation over
/// the given morphisms.
LawReport check_two_category_laws(const TwoCategory& c, const std::vector<Morphism>& sample);
/// Identities are members and membership is closed under composition.
LawReport check_wide_subcategory(const WideSubcategory& s, const std::vector<Morphism>& sample);

}  // namespace cgm
