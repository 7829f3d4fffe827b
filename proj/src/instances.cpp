#include "cgm/instances.hpp"

#include <algorithm>
#include <memory>

#include "cgm/error.hpp"
#include "cgm/translations.hpp"

namespace cgm {

namespace {

std::vector<Value> small_ints(std::int64_t lo, std::int64_t hi) {
  std::vector<Value> out;
  for (auto i = lo; i <= hi; ++i) out.push_back(Value::integer(i));
  return out;
}

template <class T>
const T& choose(const std::vector<T>& xs, Rng& rng) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

}  // namespace

CatGradedMonad identity_instance(IndexCategory c) {
  CatGradedMonad t{"identity", std::move(c), {}, {}, {}, {}, {}, {}, {}};
  t.unit = [](const ObjectId&, const Value& a) { return a; };
  t.mult = [](const Morphism&, const Morphism&, const Value& p) { return p; };
  t.map = [](const Morphism&, const ValueFn& h, const Value& p) { return h(p); };
  t.valid = [](const Morphism&, const Value&) { return true; };
  t.sample = [](const Morphism&, Rng& rng, const std::vector<Value>& leaves) -> std::optional<Value> {
    return choose(leaves, rng);
  };
  return t;
}

// ---------------------------------------------------------------------------
// Graded lists

namespace {

GradedMonad list_base(std::int64_t max_grade, bool broken) {
  std::vector<Value> grades = small_ints(0, std::max<std::int64_t>(1, max_grade));
  GradedMonad g;
  g.name = broken ? "broken-glist" : "glist";
  g.monoid = nat_times(grades);
  g.unit = [](const Value& a) { return Value::seq({a}); };
  g.mult = [broken](const Value&, const Value&, const Value& xss) {
    std::vector<Value> out;
    for (const auto& xs : xss.items()) {
      if (!xs.is(Value::Kind::Seq)) throw Error(ErrorCode::MalformedPayload, "inner payload is not a list");
      out.insert(out.end(), xs.items().begin(), xs.items().end());
    }
    if (broken && !out.empty()) out.pop_back();
    return Value::seq(std::move(out));
  };
  g.map = [](const Value&, const ValueFn& h, const Value& xs) {
    std::vector<Value> out;
    for (const auto& x : xs.items()) out.push_back(h(x));
    return Value::seq(std::move(out));
  };
  g.approx = [](const Value&, const Value&, const Value& xs) { return xs; };
  g.valid = [](const Value& m, const Value& xs) {
    return xs.is(Value::Kind::Seq) && static_cast<std::int64_t>(xs.items().size()) <= m.as_int();
  };
  g.sample = [](const Value& m, Rng& rng, const std::vector<Value>& leaves) -> std::optional<Value> {
    auto len = std::uniform_int_distribution<std::int64_t>(0, m.as_int())(rng);
    std::vector<Value> out;
    for (std::int64_t i = 0; i < len; ++i) out.push_back(choose(leaves, rng));
    return Value::seq(std::move(out));
  };
  g.enumerate = [](const Value& m, const std::vector<Value>& alphabet) {
    std::vector<Value> out{Value::seq({})};
    std::vector<std::vector<Value>> frontier{{}};
    for (std::int64_t len = 1; len <= m.as_int(); ++len) {
      std::vector<std::vector<Value>> next;
      for (const auto& xs : frontier) {
        for (const auto& a : alphabet) {
          auto ys = xs;
          ys.push_back(a);
          out.push_back(Value::seq(ys));
          next.push_back(std::move(ys));
        }
      }
      frontier = std::move(next);
    }
    return out;
  };
  g.leaves = small_ints(0, 2);
  return g;
}

Homomorphism list_endo(std::int64_t max_grade, const std::string& name, std::function<Value(const Value&)> fn) {
  auto t = graded_to_catgraded(graded_list(max_grade));
  Homomorphism h{t, t, [fn](const Morphism&, const Value& xs) { return fn(xs); }};
  h.source.name = "glist-" + name;
  return h;
}

}  // namespace

GradedMonad graded_list(std::int64_t max_grade) { return list_base(max_grade, false); }
GradedMonad broken_graded_list(std::int64_t max_grade) { return list_base(max_grade, true); }
TwoCatGradedMonad graded_list_instance(std::int64_t max_grade) { return pograded_to_2catgraded(graded_list(max_grade)); }
TwoCatGradedMonad broken_graded_list_instance(std::int64_t max_grade) {
  return pograded_to_2catgraded(broken_graded_list(max_grade));
}

Homomorphism list_reverse_homomorphism(std::int64_t max_grade) {
  return list_endo(max_grade, "reverse", [](const Value& xs) {
    auto items = xs.items();
    std::reverse(items.begin(), items.end());
    return Value::seq(std::move(items));
  });
}

Homomorphism list_sort_homomorphism(std::int64_t max_grade) {
  return list_endo(max_grade, "sort", [](const Value& xs) {
    auto items = xs.items();
    std::sort(items.begin(), items.end());
    return Value::seq(std::move(items));
  });
}

LawReport check_list_bound_exhaustive(const GradedMonad& g, std::int64_t max_grade, const std::vector<Value>& alphabet) {
  LawReport r;
  r.subject = g.name;
  std::vector<std::vector<Value>> lists;
  for (std::int64_t m = 0; m <= max_grade; ++m) lists.push_back(g.enumerate(Value::integer(m), alphabet));
  // Every map from the alphabet into lists of grade n, as a vector of images.
  auto continuations = [&](std::int64_t n) {
    std::vector<std::vector<Value>> out{{}};
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
      std::vector<std::vector<Value>> next;
      for (const auto& partial : out) {
        for (const auto& image : lists[n]) {
          auto k = partial;
          k.push_back(image);
          next.push_back(std::move(k));
        }
      }
      out = std::move(next);
    }
    return out;
  };
  auto apply = [&](const std::vector<Value>& k) {
    return [&](const Value& a) {
      auto pos = std::find(alphabet.begin(), alphabet.end(), a) - alphabet.begin();
      return k.at(static_cast<std::size_t>(pos));
    };
  };
  for (std::int64_t n = 0; n <= max_grade; ++n) {
    auto ks = continuations(n);
    for (std::int64_t m = 0; m <= max_grade; ++m) {
      auto vm = Value::integer(m), vn = Value::integer(n);
      for (const auto& c : lists[m]) {
        for (const auto& k : ks) {
          auto flat = g.mult(vm, vn, g.map(vm, apply(k), c));
          auto len = static_cast<std::int64_t>(flat.items().size());
          if (len <= m * n) {
            r.pass("length-bound");
          } else {
            r.fail({"length-bound", {vm.to_string(), vn.to_string()}, c.to_string(), flat.to_string(),
                    "at most " + std::to_string(m * n) + " elements"});
          }
          for (std::int64_t m2 = m; m2 <= max_grade; ++m2) {
            for (std::int64_t n2 = n; n2 <= max_grade; ++n2) {
              auto vm2 = Value::integer(m2), vn2 = Value::integer(n2);
              auto lhs = g.approx(Value::integer(m * n), Value::integer(m2 * n2), flat);
              auto widened = g.map(vm, [&](const Value& a) { return g.approx(vn, vn2, apply(k)(a)); }, c);
              auto rhs = g.mult(vm2, vn2, g.approx(vm, vm2, widened));
              if (lhs == rhs) {
                r.pass("approx-mult");
              } else {
                r.fail({"approx-mult", {vm.to_string(), vm2.to_string(), vn.to_string(), vn2.to_string()},
                        c.to_string(), lhs.to_string(), rhs.to_string()});
              }
            }
          }
        }
      }
    }
  }
  return r;
}

Morphism list_grade(std::int64_t n) { return Morphism::monoid_elem(star(), Value::integer(n)); }

GradedComputation list_choose(std::vector<Value> options) {
  auto n = static_cast<std::int64_t>(options.size());
  return {list_grade(n), Value::seq(std::move(options))};
}

GradedComputation list_fail() { return {list_grade(0), Value::seq({})}; }

// ---------------------------------------------------------------------------
// ConcSt

Morphism ConcSt::step(const std::string& generator) const {
  for (const auto& e : monad.index.edges()) {
    if (e.name == generator) return Morphism::path(e.src, e.tgt, {generator});
  }
  throw Error(ErrorCode::UnknownPrim, "no lock-protocol operation named " + generator);
}

Value ConcSt::normalise(std::int64_t v) const {
  std::int64_t n = hi - lo + 1;
  std::int64_t r = (v - lo) % n;
  if (r < 0) r += n;
  return Value::integer(lo + r);
}

namespace {

Value state_table(std::int64_t lo, std::int64_t hi, const std::function<Value(const Value&)>& fn) {
  std::vector<Value::Entry> rows;
  for (auto s = lo; s <= hi; ++s) rows.emplace_back(Value::integer(s), fn(Value::integer(s)));
  return Value::table(std::move(rows));
}

}  // namespace

GradedComputation ConcSt::get() const {
  return {step("get"), state_table(lo, hi, [](const Value& s) { return Value::pair(s, s); })};
}

GradedComputation ConcSt::put(const Value& v) const {
  if (!v.is(Value::Kind::Int)) throw Error(ErrorCode::RuntimeError, "put expects an integer, got " + v.to_string());
  auto stored = normalise(v.as_int());
  return {step("put"), state_table(lo, hi, [&](const Value&) { return Value::pair(Value::unit(), stored); })};
}

GradedComputation ConcSt::lock() const {
  return {step("lock"), state_table(lo, hi, [](const Value& s) { return Value::pair(Value::unit(), s); })};
}

GradedComputation ConcSt::unlock() const {
  return {step("unlock"), state_table(lo, hi, [](const Value& s) { return Value::pair(Value::unit(), s); })};
}

GradedComputation ConcSt::spawn(const GradedComputation& body) const {
  ObjectId free("free");
  if (!(body.index.src() == free) || !(body.index.tgt() == free)) {
    throw Error(ErrorCode::SpawnGradeError, "spawned body has grade " + body.index.describe() +
                                                "; only free -> free computations may be spawned");
  }
  return {monad.index.identity(free), state_table(lo, hi, [&](const Value& s) {
            return Value::pair(Value::unit(), body.payload.at(s).second());
          })};
}

Value ConcSt::run(const GradedComputation& c, std::int64_t init) const { return c.payload.at(normalise(init)); }

ConcSt concst_instance(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error(ErrorCode::InvalidValue, "empty store range");
  ConcSt st{CatGradedMonad{"concst", lock_category(), {}, {}, {}, {}, {}, {}, {}}, lo, hi};
  auto& t = st.monad;
  t.unit = [lo, hi](const ObjectId&, const Value& a) {
    return state_table(lo, hi, [&](const Value& s) { return Value::pair(a, s); });
  };
  t.mult = [lo, hi](const Morphism&, const Morphism&, const Value& p) {
    return state_table(lo, hi, [&](const Value& s) {
      const auto& step = p.at(s);
      return step.first().at(step.second());
    });
  };
  t.map = [lo, hi](const Morphism&, const ValueFn& h, const Value& p) {
    return state_table(lo, hi, [&](const Value& s) {
      const auto& r = p.at(s);
      return Value::pair(h(r.first()), r.second());
    });
  };
  t.valid = [lo, hi](const Morphism&, const Value& p) {
    if (!p.is(Value::Kind::Table) || p.entries().size() != static_cast<std::size_t>(hi - lo + 1)) return false;
    for (auto s = lo; s <= hi; ++s) {
      const auto* r = p.lookup(Value::integer(s));
      if (!r || !r->is(Value::Kind::Pair) || !r->second().is(Value::Kind::Int)) return false;
      auto v = r->second().as_int();
      if (v < lo || v > hi) return false;
    }
    return true;
  };
  t.sample = [lo, hi](const Morphism&, Rng& rng, const std::vector<Value>& leaves) -> std::optional<Value> {
    std::uniform_int_distribution<std::int64_t> store(lo, hi);
    return state_table(lo, hi, [&](const Value&) {
      const auto& a = choose(leaves, rng);
      return Value::pair(a, Value::integer(store(rng)));
    });
  };
  return st;
}

// ---------------------------------------------------------------------------
// Typed state

namespace {

ObjectId state_object(int k) { return ObjectId("S" + std::to_string(k)); }

std::string function_label(int from, int to, const std::vector<int>& fn) {
  std::string out = "S" + std::to_string(from) + ">S" + std::to_string(to) + "[";
  for (std::size_t i = 0; i < fn.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(fn[i]);
  }
  return out + "]";
}

int object_size(const ObjectId& o) { return std::stoi(o.name().substr(1)); }

}  // namespace

std::vector<int> state_function(const Morphism& m) {
  if (m.word() == Morphism::Word::Identity) {
    std::vector<int> out(object_size(m.src()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
    return out;
  }
  const auto& label = m.label();
  auto open = label.find('[');
  std::vector<int> out;
  std::string cur;
  for (auto i = open + 1; i < label.size(); ++i) {
    char c = label[i];
    if (c == ',' || c == ']') {
      out.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

StateSpace function_space(int n, const std::function<bool(int, int, const std::vector<int>&)>& keep) {
  if (n < 1) throw Error(ErrorCode::InvalidValue, "need at least one state set");
  std::vector<ObjectId> objects;
  std::map<ObjectId, std::vector<Value>> states;
  for (int k = 1; k <= n; ++k) {
    objects.push_back(state_object(k));
    states[state_object(k)] = small_ints(0, k - 1);
  }

  std::vector<TableMorphism> morphisms;
  std::map<std::string, std::pair<std::pair<int, int>, std::vector<int>>> fns;
  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) {
      std::vector<int> fn(a, 0);
      while (true) {
        bool identity = a == b;
        for (int i = 0; i < a && identity; ++i) identity = fn[i] == i;
        if (!identity && keep(a, b, fn)) {
          auto label = function_label(a, b, fn);
          morphisms.push_back({label, state_object(a), state_object(b)});
          fns[label] = {{a, b}, fn};
        }
        int i = 0;
        while (i < a && ++fn[i] == b) fn[i++] = 0;
        if (i == a) break;
      }
    }
  }

  std::map<std::pair<std::string, std::string>, std::string> composition;
  for (const auto& [gl, gv] : fns) {
    for (const auto& [fl, fv] : fns) {
      if (fv.first.second != gv.first.first) continue;
      int a = fv.first.first, c = gv.first.second;
      std::vector<int> h(a);
      bool identity = a == c;
      for (int i = 0; i < a; ++i) {
        h[i] = gv.second[fv.second[i]];
        identity = identity && h[i] == i;
      }
      auto label = function_label(a, c, h);
      if (identity) {
        composition[{gl, fl}] = "id";
      } else if (fns.count(label)) {
        composition[{gl, fl}] = label;
      } else {
        throw Error(ErrorCode::InvalidValue, "function subset is not closed under composition: " + label);
      }
    }
  }

  StateSpace space{finite_table_category(objects, morphisms, composition), std::move(states), {}};
  auto lookup = std::make_shared<std::map<std::string, std::vector<Value>>>();
  for (const auto& [label, fv] : fns) {
    auto& images = (*lookup)[label];
    for (int v : fv.second) images.push_back(Value::integer(v));
  }
  space.apply = [lookup](const Morphism& m, const Value& s) {
    if (m.word() == Morphism::Word::Identity) return s;
    auto it = lookup->find(m.label());
    if (it == lookup->end()) throw Error(ErrorCode::ForeignMorphism, m.describe() + " is not a state function");
    return it->second.at(static_cast<std::size_t>(s.as_int()));
  };
  return space;
}

StateSpace function_space(int n) {
  return function_space(n, [](int, int, const std::vector<int>&) { return true; });
}

StateSpace discrete_space(int n) {
  auto space = function_space(n, [](int, int, const std::vector<int>&) { return false; });
  space.category = discretise(space.category);
  return space;
}

namespace {

const Value& state_row(const Value& table, const Value& s) {
  const auto* r = table.is(Value::Kind::Table) ? table.lookup(s) : nullptr;
  if (!r) throw Error(ErrorCode::DomainMismatch, "state " + s.to_string() + " missing from " + table.to_string());
  return *r;
}

const std::vector<Value>& states_of(const StateSpace& space, const ObjectId& o) {
  auto it = space.states.find(o);
  if (it == space.states.end()) throw Error(ErrorCode::UnknownObject, o.name() + " has no state set");
  return it->second;
}

}  // namespace

ParameterisedMonad typed_state(StateSpace space, std::vector<Value> leaves) {
  if (leaves.empty()) leaves = small_ints(0, 1);
  auto sp = std::make_shared<const StateSpace>(std::move(space));
  ParameterisedMonad p;
  p.name = "tstate";
  p.index = sp->category;
  p.leaves = leaves;
  p.eta = [sp](const ObjectId& i, const Value& a) {
    std::vector<Value::Entry> rows;
    for (const auto& s : states_of(*sp, i)) rows.emplace_back(s, Value::pair(a, s));
    return Value::table(std::move(rows));
  };
  p.mu = [sp](const ObjectId& i, const ObjectId&, const ObjectId&, const Value& v) {
    std::vector<Value::Entry> rows;
    for (const auto& s : states_of(*sp, i)) {
      const auto& step = state_row(v, s);
      rows.emplace_back(s, state_row(step.first(), step.second()));
    }
    return Value::table(std::move(rows));
  };
  p.morph = [sp](const Morphism& f, const Morphism& g, const ValueFn& h, const Value& c) {
    std::vector<Value::Entry> rows;
    for (const auto& s : states_of(*sp, f.src())) {
      const auto& r = state_row(c, sp->apply(f, s));
      rows.emplace_back(s, Value::pair(h(r.first()), sp->apply(g, r.second())));
    }
    return Value::table(std::move(rows));
  };
  p.valid = [sp](const ObjectId& i, const ObjectId& j, const Value& v) {
    const auto& si = states_of(*sp, i);
    const auto& sj = states_of(*sp, j);
    if (!v.is(Value::Kind::Table) || v.entries().size() != si.size()) return false;
    for (const auto& s : si) {
      const auto* r = v.lookup(s);
      if (!r || !r->is(Value::Kind::Pair)) return false;
      if (std::find(sj.begin(), sj.end(), r->second()) == sj.end()) return false;
    }
    return true;
  };
  p.sample = [sp](const ObjectId& i, const ObjectId& j, Rng& rng,
                  const std::vector<Value>& carried) -> std::optional<Value> {
    const auto& sj = states_of(*sp, j);
    std::vector<Value::Entry> rows;
    for (const auto& s : states_of(*sp, i)) rows.emplace_back(s, Value::pair(choose(carried, rng), choose(sj, rng)));
    return Value::table(std::move(rows));
  };
  p.enumerate = [sp](const ObjectId& i, const ObjectId& j, const std::vector<Value>& carried) {
    const auto& si = states_of(*sp, i);
    std::vector<Value> cells;
    for (const auto& a : carried)
      for (const auto& s : states_of(*sp, j)) cells.push_back(Value::pair(a, s));
    std::vector<Value> out;
    std::vector<std::size_t> digit(si.size(), 0);
    if (cells.empty()) return out;
    while (true) {
      std::vector<Value::Entry> rows;
      for (std::size_t k = 0; k < si.size(); ++k) rows.emplace_back(si[k], cells[digit[k]]);
      out.push_back(Value::table(std::move(rows)));
      std::size_t k = 0;
      while (k < digit.size() && ++digit[k] == cells.size()) digit[k++] = 0;
      if (k == digit.size()) break;
    }
    return out;
  };
  p.count = [sp](const ObjectId& i, const ObjectId& j, std::size_t carried) {
    std::size_t cells = carried * states_of(*sp, j).size();
    std::size_t total = 1;
    for (std::size_t k = 0; k < states_of(*sp, i).size(); ++k) {
      if (cells != 0 && total > SIZE_MAX / cells) return SIZE_MAX;
      total *= cells;
    }
    return total;
  };
  return p;
}

ParameterisedMonad typed_state_param(int n) { return typed_state(function_space(n)); }

ParameterisedMonad typed_state_discrete(int n) {
  auto p = typed_state(discrete_space(n));
  p.name = "tstate-discrete";
  return p;
}

Value tstate_read(const StateSpace& space, const ObjectId& s) {
  std::vector<Value::Entry> rows;
  for (const auto& x : states_of(space, s)) rows.emplace_back(x, Value::pair(x, x));
  return Value::table(std::move(rows));
}

Value tstate_store(const StateSpace& space, const ObjectId& from, const Value& v) {
  std::vector<Value::Entry> rows;
  for (const auto& x : states_of(space, from)) rows.emplace_back(x, Value::pair(Value::unit(), v));
  return Value::table(std::move(rows));
}

GeneralisedUnit constructive_param(const ParameterisedMonad& p, const IndexCategory& c) {
  if (c.objects() != p.index.objects()) {
    throw Error(ErrorCode::InvalidValue, "constructive restriction needs the same objects as " + p.name);
  }
  for (const auto& m : c.morphisms()) {
    if (!p.index.contains(m)) throw Error(ErrorCode::ForeignMorphism, m.describe() + " is not a morphism of " + p.name);
  }
  CatGradedMonad t{p.name + "-constructive", c, {}, {}, {}, {}, {}, {}, p.leaves};
  t.unit = [p](const ObjectId& i, const Value& a) { return p.eta(i, a); };
  t.mult = [p](const Morphism& f, const Morphism& g, const Value& v) { return p.mu(f.src(), f.tgt(), g.tgt(), v); };
  t.map = [p](const Morphism& f, const ValueFn& h, const Value& v) { return p.map(f.src(), f.tgt(), h, v); };
  t.valid = [p](const Morphism& f, const Value& v) { return p.valid(f.src(), f.tgt(), v); };
  t.sample = [p](const Morphism& f, Rng& rng, const std::vector<Value>& carried) {
    return p.sample(f.src(), f.tgt(), rng, carried);
  };
  auto geneta = [p](const Morphism& f, const Value& a) {
    return p.morph(p.index.identity(f.src()), f, [](const Value& x) { return x; }, p.eta(f.src(), a));
  };
  return GeneralisedUnit{t, whole(c), geneta};
}

}  // namespace cgm
