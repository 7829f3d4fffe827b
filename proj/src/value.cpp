#include "cgm/value.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <variant>

#include "cgm/error.hpp"

namespace cgm {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_rational(const Rational& r) {
  return std::hash<std::string>{}(r.str());
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(boost::multiprecision::cpp_int(text));
    }
    boost::multiprecision::cpp_int num(text.substr(0, slash));
    boost::multiprecision::cpp_int den(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::InvalidValue, "zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    throw Error(ErrorCode::InvalidValue, "not a rational: '" + text + "'");
  }
}

std::string rational_to_string(const Rational& r) { return r.str(); }

struct UnitRep {};
struct PairRep {
  Value a, b;
};
struct TagRep {
  std::string name;
  Value inner;
};
struct TableRep {
  std::vector<Value::Entry> entries;
};
struct DistRep {
  std::vector<Value::Weighted> weights;
};

struct Value::Node {
  std::variant<UnitRep, std::int64_t, Rational, bool, std::string, PairRep, std::vector<Value>,
               TagRep, TableRep, DistRep>
      rep;
  std::size_t hash = 0;
};

namespace {

std::shared_ptr<const Value::Node> make_node(auto rep) {
  auto node = std::make_shared<Value::Node>();
  node->rep = std::move(rep);
  return node;
}

const std::shared_ptr<const Value::Node>& unit_node() {
  static const std::shared_ptr<const Value::Node> node = [] {
    auto n = std::make_shared<Value::Node>();
    n->rep = UnitRep{};
    n->hash = 0x51ed27;
    return n;
  }();
  return node;
}

[[noreturn]] void wrong_kind(const char* wanted, const Value& v) {
  throw Error(ErrorCode::MalformedPayload,
              std::string("expected ") + wanted + ", got " + v.to_string());
}

}  // namespace

Value::Value() : node_(unit_node()) {}

Value Value::integer(std::int64_t v) {
  auto n = std::make_shared<Node>();
  n->rep = v;
  n->hash = mix(1, std::hash<std::int64_t>{}(v));
  return Value(std::move(n));
}

Value Value::rational(Rational v) {
  auto n = std::make_shared<Node>();
  n->hash = mix(2, hash_rational(v));
  n->rep = std::move(v);
  return Value(std::move(n));
}

Value Value::boolean(bool v) {
  auto n = std::make_shared<Node>();
  n->rep = v;
  n->hash = mix(3, v ? 1 : 0);
  return Value(std::move(n));
}

Value Value::str(std::string v) {
  auto n = std::make_shared<Node>();
  n->hash = mix(4, std::hash<std::string>{}(v));
  n->rep = std::move(v);
  return Value(std::move(n));
}

Value Value::pair(Value a, Value b) {
  auto n = std::make_shared<Node>();
  n->hash = mix(mix(5, a.hash()), b.hash());
  n->rep = PairRep{std::move(a), std::move(b)};
  return Value(std::move(n));
}

Value Value::seq(std::vector<Value> items) {
  auto n = std::make_shared<Node>();
  std::size_t h = 6;
  for (const auto& v : items) h = mix(h, v.hash());
  n->hash = h;
  n->rep = std::move(items);
  return Value(std::move(n));
}

Value Value::tag(std::string name, Value inner) {
  auto n = std::make_shared<Node>();
  n->hash = mix(mix(7, std::hash<std::string>{}(name)), inner.hash());
  n->rep = TagRep{std::move(name), std::move(inner)};
  return Value(std::move(n));
}

Value Value::table(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& x, const Entry& y) { return x.first < y.first; });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i - 1].first == entries[i].first) {
      throw Error(ErrorCode::InvalidValue,
                  "duplicate table key " + entries[i].first.to_string());
    }
  }
  auto n = std::make_shared<Node>();
  std::size_t h = 8;
  for (const auto& [k, v] : entries) h = mix(mix(h, k.hash()), v.hash());
  n->hash = h;
  n->rep = TableRep{std::move(entries)};
  return Value(std::move(n));
}

Value Value::dist(std::vector<Weighted> weights) {
  std::sort(weights.begin(), weights.end(),
            [](const Weighted& x, const Weighted& y) { return x.first < y.first; });
  std::vector<Weighted> merged;
  merged.reserve(weights.size());
  Rational total = 0;
  for (auto& [v, w] : weights) {
    if (w < 0) throw Error(ErrorCode::InvalidValue, "negative weight on " + v.to_string());
    total += w;
    if (!merged.empty() && merged.back().first == v) {
      merged.back().second += w;
    } else {
      merged.emplace_back(std::move(v), std::move(w));
    }
  }
  std::erase_if(merged, [](const Weighted& e) { return e.second == 0; });
  if (total != 1) {
    throw Error(ErrorCode::InvalidValue, "distribution weights sum to " + total.str());
  }
  auto n = std::make_shared<Node>();
  std::size_t h = 9;
  for (const auto& [v, w] : merged) h = mix(mix(h, v.hash()), hash_rational(w));
  n->hash = h;
  n->rep = DistRep{std::move(merged)};
  return Value(std::move(n));
}

Value::Kind Value::kind() const { return static_cast<Kind>(node_->rep.index()); }

std::int64_t Value::as_int() const {
  if (auto* p = std::get_if<std::int64_t>(&node_->rep)) return *p;
  wrong_kind("int", *this);
}

const Rational& Value::as_rat() const {
  if (auto* p = std::get_if<Rational>(&node_->rep)) return *p;
  wrong_kind("rational", *this);
}

bool Value::as_bool() const {
  if (auto* p = std::get_if<bool>(&node_->rep)) return *p;
  wrong_kind("bool", *this);
}

const std::string& Value::as_str() const {
  if (auto* p = std::get_if<std::string>(&node_->rep)) return *p;
  wrong_kind("string", *this);
}

const Value& Value::first() const {
  if (auto* p = std::get_if<PairRep>(&node_->rep)) return p->a;
  wrong_kind("pair", *this);
}

const Value& Value::second() const {
  if (auto* p = std::get_if<PairRep>(&node_->rep)) return p->b;
  wrong_kind("pair", *this);
}

const std::vector<Value>& Value::items() const {
  if (auto* p = std::get_if<std::vector<Value>>(&node_->rep)) return *p;
  wrong_kind("sequence", *this);
}

const std::string& Value::tag_name() const {
  if (auto* p = std::get_if<TagRep>(&node_->rep)) return p->name;
  wrong_kind("tagged value", *this);
}

const Value& Value::tag_value() const {
  if (auto* p = std::get_if<TagRep>(&node_->rep)) return p->inner;
  wrong_kind("tagged value", *this);
}

const std::vector<Value::Entry>& Value::entries() const {
  if (auto* p = std::get_if<TableRep>(&node_->rep)) return p->entries;
  wrong_kind("table", *this);
}

const std::vector<Value::Weighted>& Value::weights() const {
  if (auto* p = std::get_if<DistRep>(&node_->rep)) return p->weights;
  wrong_kind("distribution", *this);
}

const Value* Value::lookup(const Value& key) const {
  const auto& es = entries();
  auto it = std::lower_bound(es.begin(), es.end(), key,
                             [](const Entry& e, const Value& k) { return e.first < k; });
  if (it == es.end() || !(it->first == key)) return nullptr;
  return &it->second;
}

const Value& Value::at(const Value& key) const {
  if (const Value* v = lookup(key)) return *v;
  throw Error(ErrorCode::MalformedPayload,
              "key " + key.to_string() + " missing from table " + to_string());
}

namespace {

template <class T>
std::strong_ordering cmp_vec(const std::vector<T>& a, const std::vector<T>& b, auto elem) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = elem(a[i], b[i]); c != 0) return c;
  }
  return a.size() <=> b.size();
}

std::strong_ordering cmp_rat(const Rational& a, const Rational& b) {
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering Value::operator<=>(const Value& other) const {
  if (node_ == other.node_) return std::strong_ordering::equal;
  const auto& x = node_->rep;
  const auto& y = other.node_->rep;
  if (auto c = x.index() <=> y.index(); c != 0) return c;
  switch (kind()) {
    case Kind::Unit:
      return std::strong_ordering::equal;
    case Kind::Int:
      return std::get<std::int64_t>(x) <=> std::get<std::int64_t>(y);
    case Kind::Rat:
      return cmp_rat(std::get<Rational>(x), std::get<Rational>(y));
    case Kind::Bool:
      return std::get<bool>(x) <=> std::get<bool>(y);
    case Kind::Str:
      return std::get<std::string>(x).compare(std::get<std::string>(y)) <=> 0;
    case Kind::Pair: {
      const auto& p = std::get<PairRep>(x);
      const auto& q = std::get<PairRep>(y);
      if (auto c = p.a <=> q.a; c != 0) return c;
      return p.b <=> q.b;
    }
    case Kind::Seq:
      return cmp_vec(std::get<std::vector<Value>>(x), std::get<std::vector<Value>>(y),
                     [](const Value& a, const Value& b) { return a <=> b; });
    case Kind::Tag: {
      const auto& p = std::get<TagRep>(x);
      const auto& q = std::get<TagRep>(y);
      if (auto c = p.name.compare(q.name) <=> 0; c != 0) return c;
      return p.inner <=> q.inner;
    }
    case Kind::Table:
      return cmp_vec(std::get<TableRep>(x).entries, std::get<TableRep>(y).entries,
                     [](const Entry& a, const Entry& b) {
                       if (auto c = a.first <=> b.first; c != 0) return c;
                       return a.second <=> b.second;
                     });
    case Kind::Dist:
      return cmp_vec(std::get<DistRep>(x).weights, std::get<DistRep>(y).weights,
                     [](const Weighted& a, const Weighted& b) {
                       if (auto c = a.first <=> b.first; c != 0) return c;
                       return cmp_rat(a.second, b.second);
                     });
  }
  return std::strong_ordering::equal;
}

bool Value::operator==(const Value& other) const {
  if (node_ == other.node_) return true;
  if (node_->hash != other.node_->hash) return false;
  return (*this <=> other) == 0;
}

std::size_t Value::hash() const { return node_->hash; }

namespace {

void render(std::ostream& os, const Value& v) {
  switch (v.kind()) {
    case Value::Kind::Unit:
      os << "()";
      break;
    case Value::Kind::Int:
      os << v.as_int();
      break;
    case Value::Kind::Rat:
      os << v.as_rat().str();
      break;
    case Value::Kind::Bool:
      os << (v.as_bool() ? "true" : "false");
      break;
    case Value::Kind::Str:
      os << '"' << v.as_str() << '"';
      break;
    case Value::Kind::Pair:
      os << '(';
      render(os, v.first());
      os << ", ";
      render(os, v.second());
      os << ')';
      break;
    case Value::Kind::Seq: {
      os << '[';
      bool sep = false;
      for (const auto& x : v.items()) {
        if (sep) os << ", ";
        sep = true;
        render(os, x);
      }
      os << ']';
      break;
    }
    case Value::Kind::Tag:
      os << v.tag_name() << '(';
      render(os, v.tag_value());
      os << ')';
      break;
    case Value::Kind::Table: {
      os << '{';
      bool sep = false;
      for (const auto& [k, x] : v.entries()) {
        if (sep) os << ", ";
        sep = true;
        render(os, k);
        os << " -> ";
        render(os, x);
      }
      os << '}';
      break;
    }
    case Value::Kind::Dist: {
      os << '<';
      bool sep = false;
      for (const auto& [x, w] : v.weights()) {
        if (sep) os << ", ";
        sep = true;
        render(os, x);
        os << " @ " << w.str();
      }
      os << '>';
      break;
    }
  }
}

}  // namespace

std::string Value::to_string() const {
  std::ostringstream os;
  render(os, *this);
  return os.str();
}

void DistBuilder::add(const Value& v, const Rational& w) {
  if (w != 0) items_.emplace_back(v, w);
}

Value DistBuilder::build() const { return Value::dist(items_); }

}  // namespace cgm
