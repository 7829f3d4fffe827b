#include "cgm/ahl.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "cgm/error.hpp"

namespace cgm {

ProgramStates::ProgramStates(std::vector<VarDecl> vars) : vars_(std::move(vars)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].hi < vars_[i].lo) throw Error(ErrorCode::RangeError, "empty range for " + vars_[i].name);
    for (std::size_t j = 0; j < i; ++j) {
      if (vars_[j].name == vars_[i].name) throw Error(ErrorCode::InvalidValue, "duplicate variable " + vars_[i].name);
    }
  }
  std::vector<std::int64_t> cur;
  for (const auto& v : vars_) cur.push_back(v.lo);
  while (true) {
    std::vector<Value> items;
    for (auto x : cur) items.push_back(Value::integer(x));
    all_.push_back(Value::seq(std::move(items)));
    // Last variable varies fastest.
    std::size_t k = vars_.size();
    while (k > 0) {
      --k;
      if (++cur[k] <= vars_[k].hi) break;
      cur[k] = vars_[k].lo;
      if (k == 0) return;
    }
    if (vars_.empty()) return;
  }
}

std::size_t ProgramStates::slot(const std::string& var) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == var) return i;
  throw Error(ErrorCode::RuntimeError, "undeclared variable " + var);
}

Expr::Lookup ProgramStates::lookup(const Value& state) const {
  return [this, state](const std::string& name) -> std::optional<Value> {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].name == name) return state.items().at(i);
    return std::nullopt;
  };
}

bool ProgramStates::satisfies(const Value& state, const Expr& formula) const { return formula.holds(lookup(state)); }

bool ProgramStates::entails(const Expr& phi, const Expr& psi) const {
  for (const auto& s : all_)
    if (satisfies(s, phi) && !satisfies(s, psi)) return false;
  return true;
}

bool ProgramStates::in_range(const std::string& var, std::int64_t v) const {
  const auto& d = vars_[slot(var)];
  return v >= d.lo && v <= d.hi;
}

Value ProgramStates::assign(const Value& state, const std::string& var, std::int64_t v) const {
  auto k = slot(var);
  if (!in_range(var, v)) {
    throw Error(ErrorCode::RangeError, var + " := " + std::to_string(v) + " is outside " + std::to_string(vars_[k].lo) +
                                           ".." + std::to_string(vars_[k].hi));
  }
  auto items = state.items();
  items[k] = Value::integer(v);
  return Value::seq(std::move(items));
}

std::string ProgramStates::render(const Value& state) const {
  std::string out = "{";
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i) out += ", ";
    out += vars_[i].name + "=" + state.items()[i].to_string();
  }
  return out + "}";
}

ObjectId formula_object(const Expr& phi) { return ObjectId(Value::pair(star().value(), Value::str(phi.to_string()))); }

Expr object_formula(const ObjectId& o) {
  static std::mutex lock;
  static std::map<std::string, Expr> cache;
  const auto& v = o.value();
  const auto& text = v.is(Value::Kind::Pair) ? v.second().as_str() : v.as_str();
  std::lock_guard<std::mutex> guard(lock);
  auto it = cache.find(text);
  if (it == cache.end()) it = cache.emplace(text, parse_expr(text)).first;
  return it->second;
}

Morphism ahl_index(const Rational& beta, const Expr& pre, const Expr& post) {
  if (beta < 0 || beta > 1) throw Error(ErrorCode::InvalidValue, "bound " + rational_to_string(beta) + " is outside [0, 1]");
  auto p = ObjectId(Value::str(pre.to_string()));
  auto q = ObjectId(Value::str(post.to_string()));
  return Morphism::product(Morphism::monoid_elem(star(), Value::rational(beta)), Morphism::pair(p, q));
}

Rational ahl_beta(const Morphism& f) { return f.left().elem().as_rat(); }
Expr ahl_pre(const Morphism& f) { return object_formula(f.right().src()); }
Expr ahl_post(const Morphism& f) { return object_formula(f.right().tgt()); }

namespace {

using States = std::shared_ptr<const ProgramStates>;

template <class T>
const T& choose(const std::vector<T>& xs, Rng& rng) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

Value per_state(const States& st, const std::function<Value(const Value&)>& row) {
  std::vector<Value::Entry> rows;
  for (const auto& s : st->all()) rows.emplace_back(s, row(s));
  return Value::table(std::move(rows));
}

bool parses(const ObjectId& o) {
  if (!o.value().is(Value::Kind::Str)) return false;
  try {
    object_formula(o);
    return true;
  } catch (const Error&) {
    return false;
  }
}

FailureBound failure_of(const ProgramStates& st, const Value& payload, const Expr& pre, const Expr& post) {
  FailureBound out{Rational(0), std::nullopt};
  for (const auto& s : st.all()) {
    if (!st.satisfies(s, pre)) continue;
    Rational bad = 0;
    for (const auto& [outcome, w] : payload.at(s).weights()) {
      if (!st.satisfies(outcome.first(), post)) bad += w;
    }
    if (!out.worst_state || bad > out.probability) {
      out.probability = bad;
      out.worst_state = s;
    }
  }
  return out;
}

std::optional<Value> sample_payload(const States& st, const Morphism& f, Rng& rng, const std::vector<Value>& leaves) {
  auto beta = ahl_beta(f);
  auto pre = ahl_pre(f), post = ahl_post(f);
  std::vector<Value> good, bad;
  for (const auto& s : st->all()) (st->satisfies(s, post) ? good : bad).push_back(s);
  bool pre_reachable = std::any_of(st->all().begin(), st->all().end(), [&](const Value& s) { return st->satisfies(s, pre); });
  if (pre_reachable && good.empty() && beta < 1) return std::nullopt;

  std::vector<Rational> fractions{Rational(0), beta / 2, beta};
  return per_state(st, [&](const Value& s) {
    DistBuilder d;
    if (!st->satisfies(s, pre)) {
      d.add(Value::pair(choose(st->all(), rng), choose(leaves, rng)), Rational(1, 2));
      d.add(Value::pair(choose(st->all(), rng), choose(leaves, rng)), Rational(1, 2));
      return d.build();
    }
    Rational miss = bad.empty() ? Rational(0) : choose(fractions, rng);
    if (good.empty()) miss = 1;
    if (miss > 0) d.add(Value::pair(choose(bad, rng), choose(leaves, rng)), miss);
    if (miss < 1) d.add(Value::pair(choose(good, rng), choose(leaves, rng)), 1 - miss);
    return d.build();
  });
}

}  // namespace

GradedComputation Ahl::skip(const Expr& phi) const {
  auto f = ahl_index(0, phi, phi);
  return {f, monad.base.unit(f.src(), Value::unit())};
}

GradedComputation Ahl::assign(const std::string& x, const Expr& e, const Expr& post) const {
  auto pre = post.subst(x, e);
  auto st = states;
  st->slot(x);
  auto payload = per_state(st, [&](const Value& s) {
    auto v = e.eval(st->lookup(s));
    if (!v.is(Value::Kind::Int)) throw Error(ErrorCode::RuntimeError, e.to_string() + " is not an integer");
    // Overflow outside the precondition leaves the state alone; inside it is an error.
    if (!st->in_range(x, v.as_int()) && !st->satisfies(s, pre)) return Value::point(Value::pair(s, Value::unit()));
    return Value::point(Value::pair(st->assign(s, x, v.as_int()), Value::unit()));
  });
  return {ahl_index(0, pre, post), payload};
}

GradedComputation Ahl::sample_uniform(const std::string& x, std::int64_t lo, std::int64_t hi, const Rational& beta,
                                      const Expr& pre, const Expr& post) const {
  if (hi < lo) throw Error(ErrorCode::RangeError, "empty sampling range");
  auto st = states;
  if (!st->in_range(x, lo) || !st->in_range(x, hi)) {
    throw Error(ErrorCode::RangeError, "uniform(" + std::to_string(lo) + ", " + std::to_string(hi) +
                                           ") leaves the range of " + x);
  }
  Rational w(1, hi - lo + 1);
  auto payload = per_state(st, [&](const Value& s) {
    DistBuilder d;
    for (auto v = lo; v <= hi; ++v) d.add(Value::pair(st->assign(s, x, v), Value::unit()), w);
    return d.build();
  });
  return {ahl_index(beta, pre, post), payload};
}

FailureBound Ahl::failure(const Value& payload, const Expr& pre, const Expr& post) const {
  return failure_of(*states, payload, pre, post);
}

Ahl ahl_instance(std::vector<VarDecl> vars, bool forget_beta) {
  auto st = std::make_shared<const ProgramStates>(std::move(vars));
  auto bounds = prob_sat();
  if (forget_beta) {
    bounds.name = "prob-forget";
    bounds.op = [](const Value& a, const Value&) { return a; };
  }
  auto prop = indiscrete_symbolic("Prop", parses);
  auto index = product(monoid_to_category(bounds), prop);
  auto leq = bounds.leq;

  CatGradedMonad t{forget_beta ? "broken-ahl" : "ahl", index, {}, {}, {}, {}, {}, {}, {Value::integer(0), Value::integer(1)}};
  t.unit = [st](const ObjectId&, const Value& a) {
    return per_state(st, [&](const Value& s) { return Value::point(Value::pair(s, a)); });
  };
  t.mult = [st](const Morphism&, const Morphism&, const Value& p) {
    return per_state(st, [&](const Value& s) {
      DistBuilder d;
      for (const auto& [outcome, w] : p.at(s).weights()) {
        for (const auto& [inner, w2] : outcome.second().at(outcome.first()).weights()) d.add(inner, w * w2);
      }
      return d.build();
    });
  };
  t.map = [st](const Morphism&, const ValueFn& h, const Value& p) {
    return per_state(st, [&](const Value& s) {
      DistBuilder d;
      for (const auto& [outcome, w] : p.at(s).weights()) d.add(Value::pair(outcome.first(), h(outcome.second())), w);
      return d.build();
    });
  };
  t.valid = [st](const Morphism& f, const Value& p) {
    if (!p.is(Value::Kind::Table) || p.entries().size() != st->all().size()) return false;
    for (const auto& s : st->all()) {
      const auto* row = p.lookup(s);
      if (!row || !row->is(Value::Kind::Dist)) return false;
      for (const auto& [outcome, w] : row->weights()) {
        if (!outcome.is(Value::Kind::Pair)) return false;
        const auto& all = st->all();
        if (std::find(all.begin(), all.end(), outcome.first()) == all.end()) return false;
      }
    }
    return failure_of(*st, p, ahl_pre(f), ahl_post(f)).probability <= ahl_beta(f);
  };
  t.sample = [st](const Morphism& f, Rng& rng, const std::vector<Value>& leaves) {
    return sample_payload(st, f, rng, leaves);
  };

  TwoCategory index2{index, [leq](const Morphism& f, const Morphism& g) {
                       return f.src() == g.src() && f.tgt() == g.tgt() && leq(f.left().elem(), g.left().elem());
                     }};
  TwoCatGradedMonad two{t, index2, [](const Morphism&, const Morphism&, const Value& v) { return v; }};

  WideSubcategory sub{index, [st](const Morphism& f) {
                        return ahl_beta(f) == 0 && st->entails(ahl_pre(f), ahl_post(f));
                      }};
  auto unit = t.unit;
  auto geneta = [st, unit](const Morphism& f, const Value& a) {
    if (ahl_beta(f) != 0 || !st->entails(ahl_pre(f), ahl_post(f))) {
      throw Error(ErrorCode::InvalidImplication, ahl_pre(f).to_string() + " -> " + ahl_post(f).to_string() +
                                                     " at bound " + rational_to_string(ahl_beta(f)));
    }
    return unit(f.src(), a);
  };
  return Ahl{two, GeneralisedUnit{t, sub, geneta}, st};
}

Ahl ahl_law_instance(bool forget_beta) {
  auto a = ahl_instance({{"x", 0, 2}}, forget_beta);
  std::vector<Expr> formulas;
  for (const char* text : {"true", "x == 0", "x >= 1", "x != 2", "x <= 1"}) formulas.push_back(parse_expr(text));
  std::vector<Morphism> indices;
  for (const char* b : {"0", "1/10", "1/2", "1"})
    for (const auto& p : formulas)
      for (const auto& q : formulas) indices.push_back(ahl_index(parse_rational(b), p, q));
  a.monad.base.law_indices = indices;
  a.unit.monad.law_indices = indices;
  return a;
}

}  // namespace cgm
