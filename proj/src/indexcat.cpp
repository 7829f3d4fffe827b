#include "cgm/indexcat.hpp"

#include <algorithm>
#include <set>

#include "cgm/error.hpp"

namespace cgm {

// ---------------------------------------------------------------------------
// ObjectId / Morphism

std::string ObjectId::name() const {
  if (value_.is(Value::Kind::Str)) return value_.as_str();
  if (value_.is(Value::Kind::Pair)) {
    return "(" + ObjectId(value_.first()).name() + ", " + ObjectId(value_.second()).name() + ")";
  }
  return value_.to_string();
}

Morphism Morphism::identity(const ObjectId& object) {
  return Morphism(object, object, Word::Identity, Value());
}

Morphism Morphism::path(const ObjectId& src, const ObjectId& tgt, std::vector<std::string> gens) {
  if (gens.empty()) {
    if (!(src == tgt)) throw Error(ErrorCode::CompositionMismatch, "empty path between distinct objects");
    return identity(src);
  }
  std::vector<Value> items;
  items.reserve(gens.size());
  for (auto& g : gens) items.push_back(Value::str(std::move(g)));
  return Morphism(src, tgt, Word::Path, Value::seq(std::move(items)));
}

Morphism Morphism::monoid_elem(const ObjectId& object, Value elem) {
  return Morphism(object, object, Word::MonoidElem, std::move(elem));
}

Morphism Morphism::pair(const ObjectId& src, const ObjectId& tgt) {
  return Morphism(src, tgt, Word::Pair, Value());
}

Morphism Morphism::inj1(const Morphism& inner) {
  return Morphism(inner.src(), inner.tgt(), Word::Inj1, Value(),
                  std::make_shared<const std::vector<Morphism>>(std::vector<Morphism>{inner}));
}

Morphism Morphism::inj2(const ObjectId& src, const ObjectId& tgt) {
  return Morphism(src, tgt, Word::Inj2, Value());
}

Morphism Morphism::named(const ObjectId& src, const ObjectId& tgt, std::string name) {
  return Morphism(src, tgt, Word::Named, Value::str(std::move(name)));
}

Morphism Morphism::product(const Morphism& left, const Morphism& right) {
  ObjectId src(Value::pair(left.src().value(), right.src().value()));
  ObjectId tgt(Value::pair(left.tgt().value(), right.tgt().value()));
  return Morphism(std::move(src), std::move(tgt), Word::Product, Value(),
                  std::make_shared<const std::vector<Morphism>>(std::vector<Morphism>{left, right}));
}

std::vector<std::string> Morphism::generators() const {
  if (word_ != Word::Path) throw Error(ErrorCode::WrongShape, "not a path: " + describe());
  std::vector<std::string> out;
  for (const auto& v : data_.items()) out.push_back(v.as_str());
  return out;
}

const Value& Morphism::elem() const {
  if (word_ != Word::MonoidElem) throw Error(ErrorCode::WrongShape, "not a monoid element: " + describe());
  return data_;
}

const std::string& Morphism::label() const {
  if (word_ != Word::Named) throw Error(ErrorCode::WrongShape, "not a named morphism: " + describe());
  return data_.as_str();
}

const Morphism& Morphism::inner() const {
  if (word_ != Word::Inj1) throw Error(ErrorCode::WrongShape, "not a first injection: " + describe());
  return (*parts_)[0];
}

const Morphism& Morphism::left() const {
  if (word_ != Word::Product) throw Error(ErrorCode::WrongShape, "not a product morphism: " + describe());
  return (*parts_)[0];
}

const Morphism& Morphism::right() const {
  if (word_ != Word::Product) throw Error(ErrorCode::WrongShape, "not a product morphism: " + describe());
  return (*parts_)[1];
}

std::string Morphism::to_string() const {
  switch (word_) {
    case Word::Identity:
      return "id_" + src_.name();
    case Word::Path: {
      std::string out;
      for (const auto& v : data_.items()) {
        if (!out.empty()) out += ';';
        out += v.as_str();
      }
      return out;
    }
    case Word::MonoidElem:
      return data_.to_string();
    case Word::Pair:
      return "(" + src_.name() + ", " + tgt_.name() + ")";
    case Word::Inj1:
      return "in1(" + inner().to_string() + ")";
    case Word::Inj2:
      return "in2(" + src_.name() + ", " + tgt_.name() + ")";
    case Word::Named:
      return data_.as_str();
    case Word::Product:
      return "<" + left().to_string() + ", " + right().to_string() + ">";
  }
  return "?";
}

std::string Morphism::describe() const {
  return to_string() + " : " + src_.name() + " -> " + tgt_.name();
}

std::strong_ordering Morphism::operator<=>(const Morphism& o) const {
  if (auto c = src_ <=> o.src_; c != 0) return c;
  if (auto c = tgt_ <=> o.tgt_; c != 0) return c;
  if (auto c = word_ <=> o.word_; c != 0) return c;
  if (auto c = data_ <=> o.data_; c != 0) return c;
  std::size_t n = parts_ ? parts_->size() : 0;
  std::size_t m = o.parts_ ? o.parts_->size() : 0;
  if (auto c = n <=> m; c != 0) return c;
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = (*parts_)[i] <=> (*o.parts_)[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Monoids

Rational saturating_add(const Rational& a, const Rational& b) {
  Rational s = a + b;
  return s > 1 ? Rational(1) : s;
}

namespace {

std::vector<Value> ints(std::initializer_list<std::int64_t> xs) {
  std::vector<Value> out;
  for (auto x : xs) out.push_back(Value::integer(x));
  return out;
}

bool is_nat(const Value& v) { return v.is(Value::Kind::Int) && v.as_int() >= 0; }

}  // namespace

Monoid nat_plus(std::vector<Value> samples) {
  if (samples.empty()) samples = ints({0, 1, 2, 3, 5});
  return Monoid{"nat-plus",
                [](const Value& a, const Value& b) { return Value::integer(a.as_int() + b.as_int()); },
                Value::integer(0), std::move(samples), is_nat,
                [](const Value& a, const Value& b) { return a.as_int() <= b.as_int(); }};
}

Monoid nat_times(std::vector<Value> samples) {
  if (samples.empty()) samples = ints({0, 1, 2, 3, 4});
  return Monoid{"nat-times",
                [](const Value& a, const Value& b) { return Value::integer(a.as_int() * b.as_int()); },
                Value::integer(1), std::move(samples), is_nat,
                [](const Value& a, const Value& b) { return a.as_int() <= b.as_int(); }};
}

Monoid prob_sat(std::vector<Value> samples) {
  if (samples.empty()) {
    for (const char* s : {"0", "1/10", "1/2", "7/10", "1"}) samples.push_back(Value::rational(parse_rational(s)));
  }
  return Monoid{"prob-sat",
                [](const Value& a, const Value& b) { return Value::rational(saturating_add(a.as_rat(), b.as_rat())); },
                Value::rational(0), std::move(samples),
                [](const Value& v) { return v.is(Value::Kind::Rat) && v.as_rat() >= 0 && v.as_rat() <= 1; },
                [](const Value& a, const Value& b) { return a.as_rat() <= b.as_rat(); }};
}

// ---------------------------------------------------------------------------
// Category implementations

std::string kind_name(CategoryKind kind) {
  switch (kind) {
    case CategoryKind::FiniteTable: return "table";
    case CategoryKind::FreeOnGraph: return "free";
    case CategoryKind::OneObjectMonoid: return "monoid";
    case CategoryKind::Indiscrete: return "indiscrete";
    case CategoryKind::Discrete: return "discrete";
    case CategoryKind::PairCompletion: return "pair-completion";
    case CategoryKind::Product: return "product";
  }
  return "?";
}

class IndexCategory::Impl {
 public:
  virtual ~Impl() = default;
  virtual CategoryKind kind() const = 0;
  virtual bool enumerable() const { return true; }
  virtual std::vector<ObjectId> objects() const = 0;
  virtual bool has_object(const ObjectId& o) const {
    auto objs = objects();
    return std::find(objs.begin(), objs.end(), o) != objs.end();
  }
  virtual bool contains(const Morphism& m) const = 0;
  virtual Morphism identity(const ObjectId& o) const = 0;
  /// Composition of two members with tgt(f) == src(g).
  virtual Morphism compose_members(const Morphism& g, const Morphism& f) const = 0;
  virtual std::vector<Morphism> morphisms(std::size_t max_len) const = 0;

  virtual const Monoid& monoid() const { throw Error(ErrorCode::WrongShape, "not a monoid category: " + name); }
  virtual const IndexCategory& inner() const { throw Error(ErrorCode::WrongShape, "no inner category: " + name); }
  virtual const IndexCategory& left() const { throw Error(ErrorCode::WrongShape, "not a product: " + name); }
  virtual const IndexCategory& right() const { throw Error(ErrorCode::WrongShape, "not a product: " + name); }
  virtual const std::vector<Edge>& edges() const { throw Error(ErrorCode::WrongShape, "not a free category: " + name); }

  void require_object(const ObjectId& o) const {
    if (!has_object(o)) throw Error(ErrorCode::UnknownObject, "'" + o.name() + "' is not an object of " + name);
  }

  std::string name;
};

namespace {

[[noreturn]] void foreign(const Morphism& m, const std::string& cat) {
  throw Error(ErrorCode::ForeignMorphism, m.describe() + " is not a morphism of " + cat);
}

class FreeImpl final : public IndexCategory::Impl {
 public:
  FreeImpl(std::vector<ObjectId> objects, std::vector<Edge> edges)
      : objects_(std::move(objects)), edges_(std::move(edges)) {
    std::set<ObjectId> seen(objects_.begin(), objects_.end());
    for (const auto& e : edges_) {
      if (!seen.count(e.src) || !seen.count(e.tgt)) {
        throw Error(ErrorCode::DanglingEdge,
                    "edge " + e.name + " : " + e.src.name() + " -> " + e.tgt.name() + " uses an undeclared object");
      }
      if (!by_name_.emplace(e.name, e).second) {
        throw Error(ErrorCode::InvalidValue, "duplicate generator " + e.name);
      }
    }
  }

  CategoryKind kind() const override { return CategoryKind::FreeOnGraph; }
  std::vector<ObjectId> objects() const override { return objects_; }
  const std::vector<Edge>& edges() const override { return edges_; }

  bool contains(const Morphism& m) const override {
    if (m.word() == Morphism::Word::Identity) return has_object(m.src());
    if (m.word() != Morphism::Word::Path) return false;
    ObjectId at = m.src();
    for (const auto& g : m.generators()) {
      auto it = by_name_.find(g);
      if (it == by_name_.end() || !(it->second.src == at)) return false;
      at = it->second.tgt;
    }
    return at == m.tgt();
  }

  Morphism identity(const ObjectId& o) const override {
    require_object(o);
    return Morphism::identity(o);
  }

  Morphism compose_members(const Morphism& g, const Morphism& f) const override {
    if (f.word() == Morphism::Word::Identity) return g;
    if (g.word() == Morphism::Word::Identity) return f;
    auto gens = f.generators();
    auto rest = g.generators();
    gens.insert(gens.end(), rest.begin(), rest.end());
    return Morphism::path(f.src(), g.tgt(), std::move(gens));
  }

  std::vector<Morphism> morphisms(std::size_t max_len) const override {
    std::vector<Morphism> out;
    for (const auto& o : objects_) out.push_back(Morphism::identity(o));
    std::vector<std::pair<std::vector<std::string>, ObjectId>> frontier;
    for (const auto& o : objects_) frontier.push_back({{}, o});
    for (std::size_t len = 1; len <= max_len; ++len) {
      std::vector<std::pair<std::vector<std::string>, ObjectId>> next;
      for (const auto& [gens, end] : frontier) {
        for (const auto& e : edges_) {
          if (!(e.src == end)) continue;
          auto ext = gens;
          ext.push_back(e.name);
          next.push_back({ext, e.tgt});
        }
      }
      for (const auto& [gens, end] : next) {
        ObjectId start = by_name_.at(gens.front()).src;
        out.push_back(Morphism::path(start, end, gens));
      }
      frontier = std::move(next);
    }
    return out;
  }

 private:
  std::vector<ObjectId> objects_;
  std::vector<Edge> edges_;
  std::map<std::string, Edge> by_name_;
};

class TableImpl final : public IndexCategory::Impl {
 public:
  TableImpl(std::vector<ObjectId> objects, std::vector<TableMorphism> morphisms,
            std::map<std::pair<std::string, std::string>, std::string> composition)
      : objects_(std::move(objects)), composition_(std::move(composition)) {
    std::set<ObjectId> seen(objects_.begin(), objects_.end());
    for (const auto& m : morphisms) {
      if (!seen.count(m.src) || !seen.count(m.tgt)) {
        throw Error(ErrorCode::DanglingEdge, "morphism " + m.name + " uses an undeclared object");
      }
      if (!by_name_.emplace(m.name, m).second) throw Error(ErrorCode::InvalidValue, "duplicate morphism " + m.name);
      order_.push_back(m.name);
    }
    for (const auto& [key, result] : composition_) {
      if (result != "id" && !by_name_.count(result)) {
        throw Error(ErrorCode::InvalidValue, "composition result " + result + " is not declared");
      }
    }
  }

  CategoryKind kind() const override { return CategoryKind::FiniteTable; }
  std::vector<ObjectId> objects() const override { return objects_; }

  bool contains(const Morphism& m) const override {
    if (m.word() == Morphism::Word::Identity) return has_object(m.src());
    if (m.word() != Morphism::Word::Named) return false;
    auto it = by_name_.find(m.label());
    return it != by_name_.end() && it->second.src == m.src() && it->second.tgt == m.tgt();
  }

  Morphism identity(const ObjectId& o) const override {
    require_object(o);
    return Morphism::identity(o);
  }

  Morphism compose_members(const Morphism& g, const Morphism& f) const override {
    if (f.word() == Morphism::Word::Identity) return g;
    if (g.word() == Morphism::Word::Identity) return f;
    auto it = composition_.find({g.label(), f.label()});
    if (it == composition_.end()) {
      throw Error(ErrorCode::InvalidValue, "composition table has no entry for " + g.label() + " . " + f.label());
    }
    if (it->second == "id") {
      if (!(f.src() == g.tgt())) throw Error(ErrorCode::InvalidValue, "identity result between distinct objects");
      return Morphism::identity(f.src());
    }
    const auto& r = by_name_.at(it->second);
    if (!(r.src == f.src()) || !(r.tgt == g.tgt())) {
      throw Error(ErrorCode::InvalidValue, "composition table entry " + it->second + " has the wrong endpoints");
    }
    return Morphism::named(r.src, r.tgt, r.name);
  }

  std::vector<Morphism> morphisms(std::size_t) const override {
    std::vector<Morphism> out;
    for (const auto& o : objects_) out.push_back(Morphism::identity(o));
    for (const auto& n : order_) {
      const auto& m = by_name_.at(n);
      out.push_back(Morphism::named(m.src, m.tgt, m.name));
    }
    return out;
  }

 private:
  std::vector<ObjectId> objects_;
  std::map<std::string, TableMorphism> by_name_;
  std::vector<std::string> order_;
  std::map<std::pair<std::string, std::string>, std::string> composition_;
};

class MonoidImpl final : public IndexCategory::Impl {
 public:
  explicit MonoidImpl(Monoid m) : monoid_(std::move(m)) {}

  CategoryKind kind() const override { return CategoryKind::OneObjectMonoid; }
  std::vector<ObjectId> objects() const override { return {star()}; }
  bool has_object(const ObjectId& o) const override { return o == star(); }
  const Monoid& monoid() const override { return monoid_; }

  bool contains(const Morphism& m) const override {
    return m.word() == Morphism::Word::MonoidElem && m.src() == star() && monoid_.contains(m.elem());
  }

  Morphism identity(const ObjectId& o) const override {
    require_object(o);
    return Morphism::monoid_elem(star(), monoid_.unit);
  }

  // Diagrammatic order: the first effect's element comes first in the product.
  Morphism compose_members(const Morphism& g, const Morphism& f) const override {
    return Morphism::monoid_elem(star(), monoid_.op(f.elem(), g.elem()));
  }

  std::vector<Morphism> morphisms(std::size_t) const override {
    std::vector<Morphism> out{Morphism::monoid_elem(star(), monoid_.unit)};
    for (const auto& s : monoid_.samples) {
      auto m = Morphism::monoid_elem(star(), s);
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    return out;
  }

 private:
  Monoid monoid_;
};

class DiscreteImpl final : public IndexCategory::Impl {
 public:
  explicit DiscreteImpl(IndexCategory base) : base_(std::move(base)), objects_(base_.objects()) {}

  CategoryKind kind() const override { return CategoryKind::Discrete; }
  std::vector<ObjectId> objects() const override { return objects_; }
  const IndexCategory& inner() const override { return base_; }

  bool contains(const Morphism& m) const override {
    return m.word() == Morphism::Word::Identity && has_object(m.src());
  }
  Morphism identity(const ObjectId& o) const override {
    require_object(o);
    return Morphism::identity(o);
  }
  Morphism compose_members(const Morphism&, const Morphism& f) const override { return f; }
  std::vector<Morphism> morphisms(std::size_t) const override {
    std::vector<Morphism> out;
    for (const auto& o : objects_) out.push_back(Morphism::identity(o));
    return out;
  }

 private:
  IndexCategory base_;
  std::vector<ObjectId> objects_;
};

class IndiscreteImpl final : public IndexCategory::Impl {
 public:
  explicit IndiscreteImpl(IndexCategory base)
      : base_(std::move(base)), objects_(base_->objects()) {}
  explicit IndiscreteImpl(std::function<bool(const ObjectId&)> is_object) : is_object_(std::move(is_object)) {}

  CategoryKind kind() const override { return CategoryKind::Indiscrete; }
  bool enumerable() const override { return base_.has_value(); }
  std::vector<ObjectId> objects() const override {
    if (!base_) throw Error(ErrorCode::SymbolicObjects, name + " has a symbolic object universe");
    return objects_;
  }
  bool has_object(const ObjectId& o) const override {
    if (!base_) return is_object_(o);
    return std::find(objects_.begin(), objects_.end(), o) != objects_.end();
  }
  const IndexCategory& inner() const override {
    if (!base_) return Impl::inner();
    return *base_;
  }

  bool contains(const Morphism& m) const override {
    return m.word() == Morphism::Word::Pair && has_object(m.src()) && has_object(m.tgt());
  }
  Morphism identity(const ObjectId& o) const override {
    require_object(o);
    return Morphism::pair(o, o);
  }
  Morphism compose_members(const Morphism& g, const Morphism& f) const override {
    return Morphism::pair(f.src(), g.tgt());
  }
  std::vector<Morphism> morphisms(std::size_t) const override {
    auto objs = objects();
    std::vector<Morphism> out;
    for (const auto& a : objs)
      for (const auto& b : objs) out.push_back(Morphism::pair(a, b));
    return out;
  }

 private:
  std::optional<IndexCategory> base_;
  std::vector<ObjectId> objects_;
  std::function<bool(const ObjectId&)> is_object_;
};

class PairCompletionImpl final : public IndexCategory::Impl {
 public:
  explicit PairCompletionImpl(IndexCategory base) : base_(std::move(base)), objects_(base_.objects()) {}

  CategoryKind kind() const override { return CategoryKind::PairCompletion; }
  std::vector<ObjectId> objects() const override { return objects_; }
  bool has_object(const ObjectId& o) const override { return base_.has_object(o); }
  const IndexCategory& inner() const override { return base_; }

  bool contains(const Morphism& m) const override {
    if (m.word() == Morphism::Word::Inj1) return base_.contains(m.inner());
    if (m.word() == Morphism::Word::Inj2) return has_object(m.src()) && has_object(m.tgt());
    return false;
  }
  Morphism identity(const ObjectId& o) const override {
    require_object(o);
    return Morphism::inj1(base_.identity(o));
  }
  Morphism compose_members(const Morphism& g, const Morphism& f) const override {
    if (f.word() == Morphism::Word::Inj1 && g.word() == Morphism::Word::Inj1) {
      return Morphism::inj1(base_.compose(g.inner(), f.inner()));
    }
    return Morphism::inj2(f.src(), g.tgt());
  }
  std::vector<Morphism> morphisms(std::size_t max_len) const override {
    std::vector<Morphism> out;
    for (const auto& m : base_.morphisms(max_len)) out.push_back(Morphism::inj1(m));
    for (const auto& a : objects_)
      for (const auto& b : objects_) out.push_back(Morphism::inj2(a, b));
    return out;
  }

 private:
  IndexCategory base_;
  std::vector<ObjectId> objects_;
};

class ProductImpl final : public IndexCategory::Impl {
 public:
  ProductImpl(IndexCategory l, IndexCategory r) : left_(std::move(l)), right_(std::move(r)) {}

  CategoryKind kind() const override { return CategoryKind::Product; }
  bool enumerable() const override { return left_.enumerable() && right_.enumerable(); }
  std::vector<ObjectId> objects() const override {
    std::vector<ObjectId> out;
    for (const auto& a : left_.objects())
      for (const auto& b : right_.objects()) out.emplace_back(Value::pair(a.value(), b.value()));
    return out;
  }
  bool has_object(const ObjectId& o) const override {
    if (!o.value().is(Value::Kind::Pair)) return false;
    return left_.has_object(ObjectId(o.value().first())) && right_.has_object(ObjectId(o.value().second()));
  }
  const IndexCategory& left() const override { return left_; }
  const IndexCategory& right() const override { return right_; }

  bool contains(const Morphism& m) const override {
    return m.word() == Morphism::Word::Product && left_.contains(m.left()) && right_.contains(m.right());
  }
  Morphism identity(const ObjectId& o) const override {
    require_object(o);
    return Morphism::product(left_.identity(ObjectId(o.value().first())),
                             right_.identity(ObjectId(o.value().second())));
  }
  Morphism compose_members(const Morphism& g, const Morphism& f) const override {
    return Morphism::product(left_.compose(g.left(), f.left()), right_.compose(g.right(), f.right()));
  }
  std::vector<Morphism> morphisms(std::size_t max_len) const override {
    std::vector<Morphism> out;
    for (const auto& a : left_.morphisms(max_len))
      for (const auto& b : right_.morphisms(max_len)) out.push_back(Morphism::product(a, b));
    return out;
  }

 private:
  IndexCategory left_;
  IndexCategory right_;
};

template <class T, class... Args>
IndexCategory make(std::string name, Args&&... args) {
  auto impl = std::make_shared<T>(std::forward<Args>(args)...);
  impl->name = std::move(name);
  return IndexCategory(std::move(impl));
}

}  // namespace

// ---------------------------------------------------------------------------
// IndexCategory facade

CategoryKind IndexCategory::kind() const { return impl_->kind(); }
const std::string& IndexCategory::name() const { return impl_->name; }
bool IndexCategory::enumerable() const { return impl_->enumerable(); }
std::vector<ObjectId> IndexCategory::objects() const { return impl_->objects(); }
bool IndexCategory::has_object(const ObjectId& o) const { return impl_->has_object(o); }
bool IndexCategory::contains(const Morphism& m) const { return impl_->contains(m); }
Morphism IndexCategory::identity(const ObjectId& o) const { return impl_->identity(o); }

Morphism IndexCategory::compose(const Morphism& g, const Morphism& f) const {
  if (!impl_->contains(f)) foreign(f, impl_->name);
  if (!impl_->contains(g)) foreign(g, impl_->name);
  if (!(f.tgt() == g.src())) {
    throw Error(ErrorCode::CompositionMismatch,
                "cannot compose " + g.describe() + " after " + f.describe());
  }
  return impl_->compose_members(g, f);
}

std::vector<Morphism> IndexCategory::morphisms(std::size_t max_len) const {
  return impl_->morphisms(max_len);
}

std::vector<Morphism> IndexCategory::homset(const ObjectId& src, const ObjectId& tgt, std::size_t max_len) const {
  impl_->require_object(src);
  impl_->require_object(tgt);
  std::vector<Morphism> out;
  for (auto& m : impl_->morphisms(max_len)) {
    if (m.src() == src && m.tgt() == tgt) out.push_back(std::move(m));
  }
  return out;
}

const Monoid& IndexCategory::monoid() const { return impl_->monoid(); }
const IndexCategory& IndexCategory::inner() const { return impl_->inner(); }
const IndexCategory& IndexCategory::left() const { return impl_->left(); }
const IndexCategory& IndexCategory::right() const { return impl_->right(); }
const std::vector<Edge>& IndexCategory::edges() const { return impl_->edges(); }

ObjectId star() { return ObjectId("*"); }

IndexCategory terminal_category() {
  return make<FreeImpl>("1", std::vector<ObjectId>{star()}, std::vector<Edge>{});
}

IndexCategory free_category(std::vector<ObjectId> objects, std::vector<Edge> edges) {
  return make<FreeImpl>("free", std::move(objects), std::move(edges));
}

IndexCategory finite_table_category(std::vector<ObjectId> objects, std::vector<TableMorphism> morphisms,
                                    std::map<std::pair<std::string, std::string>, std::string> composition) {
  return make<TableImpl>("table", std::move(objects), std::move(morphisms), std::move(composition));
}

IndexCategory monoid_to_category(Monoid monoid) {
  std::string name = "1(" + monoid.name + ")";
  return make<MonoidImpl>(std::move(name), std::move(monoid));
}

IndexCategory discretise(const IndexCategory& c) {
  if (!c.enumerable()) throw Error(ErrorCode::SymbolicObjects, "cannot discretise " + c.name());
  // Discretising twice yields the same objects and identities; keep one layer.
  const IndexCategory& base = c.kind() == CategoryKind::Discrete ? c.inner() : c;
  return make<DiscreteImpl>("D(" + base.name() + ")", base);
}

IndexCategory indiscretise(const IndexCategory& c) {
  if (!c.enumerable()) throw Error(ErrorCode::SymbolicObjects, "cannot indiscretise " + c.name());
  if (c.kind() == CategoryKind::Indiscrete) return c;
  return make<IndiscreteImpl>("N(" + c.name() + ")", c);
}

IndexCategory indiscrete_symbolic(std::string name, std::function<bool(const ObjectId&)> is_object) {
  return make<IndiscreteImpl>(std::move(name), std::move(is_object));
}

IndexCategory pair_completion(const IndexCategory& c) {
  if (!c.enumerable()) throw Error(ErrorCode::SymbolicObjects, "cannot pair-complete " + c.name());
  return make<PairCompletionImpl>(c.name() + "^N", c);
}

IndexCategory product(const IndexCategory& left, const IndexCategory& right) {
  return make<ProductImpl>(left.name() + " x " + right.name(), left, right);
}

IndexCategory lock_category() {
  ObjectId free("free"), critical("critical");
  return free_category({free, critical}, {{"lock", free, critical},
                                          {"unlock", critical, free},
                                          {"get", critical, critical},
                                          {"put", critical, critical}});
}

// ---------------------------------------------------------------------------
// 2-categories and wide subcategories

TwoCategory pomonoid_to_2category(Monoid monoid) {
  if (!monoid.leq) throw Error(ErrorCode::WrongShape, monoid.name + " carries no ordering");
  auto leq = monoid.leq;
  return TwoCategory{monoid_to_category(std::move(monoid)),
                     [leq](const Morphism& a, const Morphism& b) { return leq(a.elem(), b.elem()); }};
}

TwoCategory trivial_2category(IndexCategory base) {
  return TwoCategory{std::move(base), [](const Morphism& a, const Morphism& b) { return a == b; }};
}

WideSubcategory whole(const IndexCategory& c) {
  return WideSubcategory{c, [](const Morphism&) { return true; }};
}

WideSubcategory identities_only(const IndexCategory& c) {
  return WideSubcategory{c, [c](const Morphism& m) { return m.src() == m.tgt() && c.identity(m.src()) == m; }};
}

// ---------------------------------------------------------------------------
// Law checks

namespace {

void expect_equal(LawReport& report, const std::string& law, std::vector<std::string> indices,
                  const Morphism& lhs, const Morphism& rhs) {
  if (lhs == rhs) {
    report.pass(law);
  } else {
    report.fail(LawFailure{law, std::move(indices), "", lhs.describe(), rhs.describe()});
  }
}

}  // namespace

LawReport check_category_laws(const IndexCategory& c, std::size_t max_len) {
  LawReport report;
  report.subject = c.name();
  auto ms = c.morphisms(max_len);
  for (const auto& f : ms) {
    expect_equal(report, "left-identity", {f.describe()}, c.compose(c.identity(f.tgt()), f), f);
    expect_equal(report, "right-identity", {f.describe()}, c.compose(f, c.identity(f.src())), f);
  }
  for (const auto& f : ms) {
    for (const auto& g : ms) {
      if (!(f.tgt() == g.src())) continue;
      auto gf = c.compose(g, f);
      if (!(gf.src() == f.src()) || !(gf.tgt() == g.tgt())) {
        report.fail(LawFailure{"composite-endpoints", {f.describe(), g.describe()}, "", gf.describe(), ""});
      } else {
        report.pass("composite-endpoints");
      }
      for (const auto& h : ms) {
        if (!(g.tgt() == h.src())) continue;
        expect_equal(report, "associativity", {f.describe(), g.describe(), h.describe()},
                     c.compose(h, gf), c.compose(c.compose(h, g), f));
      }
    }
  }
  return report;
}

LawReport check_two_category_laws(const TwoCategory& c, const std::vector<Morphism>& sample) {
  LawReport report;
  report.subject = c.base.name() + " 2-cells";
  auto record = [&](const std::string& law, bool ok, std::vector<std::string> idx) {
    if (ok) report.pass(law);
    else report.fail(LawFailure{law, std::move(idx), "", "false", "true"});
  };
  auto parallel = [](const Morphism& a, const Morphism& b) { return a.src() == b.src() && a.tgt() == b.tgt(); };
  for (const auto& f : sample) record("reflexivity", c.leq(f, f), {f.describe()});
  for (const auto& f : sample) {
    for (const auto& g : sample) {
      if (!parallel(f, g) || !c.leq(f, g)) continue;
      for (const auto& h : sample) {
        if (!parallel(g, h) || !c.leq(g, h)) continue;
        record("transitivity", c.leq(f, h), {f.describe(), g.describe(), h.describe()});
      }
    }
  }
  for (const auto& f : sample) {
    for (const auto& f2 : sample) {
      if (!parallel(f, f2) || !c.leq(f, f2)) continue;
      for (const auto& g : sample) {
        if (!(f.tgt() == g.src())) continue;
        for (const auto& g2 : sample) {
          if (!parallel(g, g2) || !c.leq(g, g2)) continue;
          record("monotonicity", c.leq(c.base.compose(g, f), c.base.compose(g2, f2)),
                 {f.describe(), f2.describe(), g.describe(), g2.describe()});
        }
      }
    }
  }
  return report;
}

LawReport check_wide_subcategory(const WideSubcategory& s, const std::vector<Morphism>& sample) {
  LawReport report;
  report.subject = s.parent.name() + " subcategory";
  if (s.parent.enumerable()) {
    for (const auto& o : s.parent.objects()) {
      auto id = s.parent.identity(o);
      if (s.member(id)) report.pass("identities");
      else report.fail(LawFailure{"identities", {id.describe()}, "", "false", "true"});
    }
  }
  for (const auto& f : sample) {
    if (!s.member(f)) continue;
    for (const auto& g : sample) {
      if (!s.member(g) || !(f.tgt() == g.src())) continue;
      auto gf = s.parent.compose(g, f);
      if (s.member(gf)) report.pass("closure");
      else report.fail(LawFailure{"closure", {f.describe(), g.describe()}, "", gf.describe(), "member"});
    }
  }
  return report;
}

}  // namespace cgm
