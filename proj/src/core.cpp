#include "cgm/core.hpp"

#include <map>

#include "cgm/error.hpp"

namespace cgm {

GradedComputation unit(const CatGradedMonad& t, const ObjectId& object, const Value& a) {
  auto id = t.index.identity(object);
  return {id, t.unit(object, a)};
}

GradedComputation mult(const CatGradedMonad& t, const Morphism& f, const Morphism& g, const Value& nested) {
  auto gf = t.index.compose(g, f);
  return {gf, t.mult(f, g, nested)};
}

Value fmap(const CatGradedMonad& t, const Morphism& f, const ValueFn& fn, const Value& payload) {
  return t.map(f, fn, payload);
}

GradedComputation bind(const CatGradedMonad& t, const GradedComputation& c, const Morphism& g,
                       const std::function<GradedComputation(const Value&)>& k) {
  auto gf = t.index.compose(g, c.index);
  auto inner = t.map(c.index, [&](const Value& a) {
    auto r = k(a);
    if (!(r.index == g)) {
      throw Error(ErrorCode::InconsistentContinuationIndex,
                  "continuation returned " + r.index.describe() + ", expected " + g.describe());
    }
    return r.payload;
  }, c.payload);
  return {gf, t.mult(c.index, g, inner)};
}

GradedComputation approximate(const TwoCatGradedMonad& t, const Morphism& f, const Morphism& g,
                              const GradedComputation& c) {
  if (!(c.index == f)) {
    throw Error(ErrorCode::MalformedPayload, "computation sits at " + c.index.describe() + ", not " + f.describe());
  }
  if (!(f.src() == g.src()) || !(f.tgt() == g.tgt()) || !t.index2.leq(f, g)) {
    throw Error(ErrorCode::NoTwoCell, "no 2-cell from " + f.describe() + " to " + g.describe());
  }
  return {g, t.approx(f, g, c.payload)};
}

GradedComputation gen_unit(const GeneralisedUnit& u, const Morphism& f, const Value& a) {
  if (!u.sub.parent.contains(f) || !u.sub.member(f)) {
    throw Error(ErrorCode::NotInSubcategory, f.describe() + " is outside the unit's subcategory");
  }
  return {f, u.geneta(f, a)};
}

GradedComputation strength(const CatGradedMonad& t, const Value& a, const GradedComputation& c) {
  return {c.index, t.map(c.index, [&](const Value& b) { return Value::pair(a, b); }, c.payload)};
}

Rng law_rng(std::uint64_t seed, const std::string& law) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : law) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return Rng(seed ^ h);
}

const std::vector<std::pair<std::string, ValueFn>>& probe_functions() {
  static const std::vector<std::pair<std::string, ValueFn>> fns = {
      {"id", [](const Value& v) { return v; }},
      {"wrap", [](const Value& v) { return Value::tag("w", v); }},
      {"dup", [](const Value& v) { return Value::pair(v, v); }},
      {"const", [](const Value&) { return Value::integer(0); }},
  };
  return fns;
}

namespace {

constexpr std::size_t kPool = 3;

template <class T>
const T& pick(const std::vector<T>& xs, Rng& rng) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

struct Indices {
  std::vector<Morphism> all;
  std::vector<std::pair<Morphism, Morphism>> pairs;
  std::vector<std::tuple<Morphism, Morphism, Morphism>> triples;
};

Indices collect(const IndexCategory& c, std::vector<Morphism> ms) {
  Indices out;
  out.all = std::move(ms);
  for (const auto& f : out.all)
    for (const auto& g : out.all)
      if (f.tgt() == g.src()) out.pairs.emplace_back(f, g);
  for (const auto& [f, g] : out.pairs)
    for (const auto& h : out.all)
      if (g.tgt() == h.src()) out.triples.emplace_back(f, g, h);
  (void)c;
  return out;
}

std::vector<Morphism> indices_of(const CatGradedMonad& t) {
  return t.law_indices.empty() ? t.index.morphisms() : t.law_indices;
}

std::vector<Value> leaves_of(const CatGradedMonad& t) {
  if (!t.leaves.empty()) return t.leaves;
  return {Value::integer(0), Value::integer(1), Value::integer(2)};
}

/// Shared plumbing for one law: sampling helpers and failure recording.
class Probe {
 public:
  Probe(const CatGradedMonad& t, LawReport& report, std::string law, std::uint64_t seed)
      : t_(t), report_(report), law_(std::move(law)), rng_(law_rng(seed, law_)) {}

  Rng& rng() { return rng_; }
  const std::string& law() const { return law_; }

  std::optional<Value> draw(const Morphism& f, const std::vector<Value>& leaves) {
    if (!t_.sample) throw Error(ErrorCode::SamplerUnavailable, t_.name + " has no sampler");
    return t_.sample(f, rng_, leaves);
  }

  std::optional<std::vector<Value>> pool(const Morphism& f, const std::vector<Value>& leaves) {
    std::vector<Value> out;
    for (std::size_t i = 0; i < kPool; ++i) {
      auto v = draw(f, leaves);
      if (!v) return std::nullopt;
      out.push_back(*v);
    }
    return out;
  }

  Value leaf(const std::vector<Value>& leaves) { return pick(leaves, rng_); }

  const std::pair<std::string, ValueFn>& fn() { return pick(probe_functions(), rng_); }

  void skip() { report_.skip(law_); }

  void compare(std::vector<std::string> idx, const std::string& input, const std::function<Value()>& lhs,
               const std::function<Value()>& rhs) {
    std::string l, r;
    try {
      Value a = lhs();
      Value b = rhs();
      if (a == b) {
        report_.pass(law_);
        return;
      }
      l = a.to_string();
      r = b.to_string();
    } catch (const Error& e) {
      l = std::string("error: ") + e.what();
      r = "-";
    }
    report_.fail(LawFailure{law_, std::move(idx), input, l, r});
  }

  void holds(std::vector<std::string> idx, const std::string& input, const std::function<bool()>& test) {
    std::string l;
    try {
      if (test()) {
        report_.pass(law_);
        return;
      }
      l = "false";
    } catch (const Error& e) {
      l = std::string("error: ") + e.what();
    }
    report_.fail(LawFailure{law_, std::move(idx), input, l, "true"});
  }

 private:
  const CatGradedMonad& t_;
  LawReport& report_;
  std::string law_;
  Rng rng_;
};

std::vector<std::string> names(std::initializer_list<const Morphism*> ms) {
  std::vector<std::string> out;
  for (const auto* m : ms) out.push_back(m->describe());
  return out;
}

/// A continuation that picks one of the pooled T_g payloads per argument.
std::function<GradedComputation(const Value&)> pooled(const Morphism& g, const std::vector<Value>& pool) {
  return [g, pool](const Value& a) { return GradedComputation{g, pool[a.hash() % pool.size()]}; };
}

void monad_laws(const CatGradedMonad& t, std::size_t n, std::uint64_t seed, LawReport& report) {
  auto ix = collect(t.index, indices_of(t));
  auto leaves = leaves_of(t);
  if (ix.all.empty()) return;

  {
    Probe p(t, report, "sampler-valid", seed);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& f = pick(ix.all, p.rng());
      auto v = p.draw(f, leaves);
      if (!v) { p.skip(); continue; }
      p.holds(names({&f}), v->to_string(), [&] { return t.valid(f, *v); });
    }
  }
  {
    Probe p(t, report, "closure-unit", seed);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& f = pick(ix.all, p.rng());
      auto a = p.leaf(leaves);
      auto id = t.index.identity(f.src());
      p.holds(names({&id}), a.to_string(), [&] { return t.valid(id, t.unit(f.src(), a)); });
    }
  }
  {
    Probe p(t, report, "closure-mult", seed);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& [f, g] = pick(ix.pairs, p.rng());
      auto inner = p.pool(g, leaves);
      auto outer = inner ? p.draw(f, *inner) : std::nullopt;
      if (!outer) { p.skip(); continue; }
      p.holds(names({&f, &g}), outer->to_string(),
              [&] { return t.valid(t.index.compose(g, f), t.mult(f, g, *outer)); });
    }
  }
  {
    Probe p(t, report, "left-unit", seed);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& f = pick(ix.all, p.rng());
      auto v = p.draw(f, leaves);
      if (!v) { p.skip(); continue; }
      auto id = t.index.identity(f.src());
      p.compare(names({&f}), v->to_string(), [&] { return t.mult(id, f, t.unit(f.src(), *v)); },
                [&] { return *v; });
    }
  }
  {
    Probe p(t, report, "right-unit", seed);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& f = pick(ix.all, p.rng());
      auto v = p.draw(f, leaves);
      if (!v) { p.skip(); continue; }
      auto id = t.index.identity(f.tgt());
      p.compare(names({&f}), v->to_string(),
                [&] {
                  return t.mult(f, id, t.map(f, [&](const Value& a) { return t.unit(f.tgt(), a); }, *v));
                },
                [&] { return *v; });
    }
  }
  {
    Probe p(t, report, "associativity", seed);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& [f, g, h] = pick(ix.triples, p.rng());
      auto ph = p.pool(h, leaves);
      auto pg = ph ? p.pool(g, *ph) : std::nullopt;
      auto v = pg ? p.draw(f, *pg) : std::nullopt;
      if (!v) { p.skip(); continue; }
      auto gf = t.index.compose(g, f);
      auto hg = t.index.compose(h, g);
      p.compare(names({&f, &g, &h}), v->to_string(), [&] { return t.mult(gf, h, t.mult(f, g, *v)); },
                [&] {
                  return t.mult(f, hg, t.map(f, [&](const Value& x) { return t.mult(g, h, x); }, *v));
                });
    }
  }
  {
    Probe p(t, report, "functor-identity", seed);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& f = pick(ix.all, p.rng());
      auto v = p.draw(f, leaves);
      if (!v) { p.skip(); continue; }
      p.compare(names({&f}), v->to_string(), [&] { return t.map(f, [](const Value& a) { return a; }, *v); },
                [&] { return *v; });
    }
  }
  {
    Probe p(t, report, "functor-composition", seed);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& f = pick(ix.all, p.rng());
      const auto& [n1, k1] = p.fn();
      const auto& [n2, k2] = p.fn();
      auto v = p.draw(f, leaves);
      if (!v) { p.skip(); continue; }
      p.compare(names({&f}), n2 + " . " + n1 + " on " + v->to_string(),
                [&] { return t.map(f, [&](const Value& a) { return k2(k1(a)); }, *v); },
                [&] { return t.map(f, k2, t.map(f, k1, *v)); });
    }
  }
  {
    Probe p(t, report, "unit-naturality", seed);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& f = pick(ix.all, p.rng());
      const auto& [fname, k] = p.fn();
      auto a = p.leaf(leaves);
      auto id = t.index.identity(f.src());
      p.compare(names({&id}), fname + " on " + a.to_string(),
                [&] { return t.map(id, k, t.unit(f.src(), a)); }, [&] { return t.unit(f.src(), k(a)); });
    }
  }
  {
    Probe p(t, report, "mult-naturality", seed);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& [f, g] = pick(ix.pairs, p.rng());
      const auto& [fname, k] = p.fn();
      auto inner = p.pool(g, leaves);
      auto v = inner ? p.draw(f, *inner) : std::nullopt;
      if (!v) { p.skip(); continue; }
      auto gf = t.index.compose(g, f);
      p.compare(names({&f, &g}), fname + " on " + v->to_string(), [&] { return t.map(gf, k, t.mult(f, g, *v)); },
                [&] { return t.mult(f, g, t.map(f, [&](const Value& x) { return t.map(g, k, x); }, *v)); });
    }
  }
  {
    Probe p(t, report, "kleisli-left", seed);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& g = pick(ix.all, p.rng());
      auto pg = p.pool(g, leaves);
      if (!pg) { p.skip(); continue; }
      auto a = p.leaf(leaves);
      auto k = pooled(g, *pg);
      p.compare(names({&g}), a.to_string(), [&] { return cgm::bind(t, unit(t, g.src(), a), g, k).payload; },
                [&] { return k(a).payload; });
    }
  }
  {
    Probe p(t, report, "kleisli-right", seed);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& f = pick(ix.all, p.rng());
      auto v = p.draw(f, leaves);
      if (!v) { p.skip(); continue; }
      auto id = t.index.identity(f.tgt());
      p.compare(names({&f}), v->to_string(),
                [&] {
                  return cgm::bind(t, {f, *v}, id, [&](const Value& a) { return unit(t, f.tgt(), a); }).payload;
                },
                [&] { return *v; });
    }
  }
  {
    Probe p(t, report, "kleisli-associativity", seed);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& [f, g, h] = pick(ix.triples, p.rng());
      auto pg = p.pool(g, leaves);
      auto ph = pg ? p.pool(h, leaves) : std::nullopt;
      auto v = ph ? p.draw(f, leaves) : std::nullopt;
      if (!v) { p.skip(); continue; }
      auto k1 = pooled(g, *pg);
      auto k2 = pooled(h, *ph);
      auto hg = t.index.compose(h, g);
      GradedComputation c{f, *v};
      p.compare(names({&f, &g, &h}), v->to_string(), [&] { return cgm::bind(t, cgm::bind(t, c, g, k1), h, k2).payload; },
                [&] { return cgm::bind(t, c, hg, [&](const Value& a) { return cgm::bind(t, k1(a), h, k2); }).payload; });
    }
  }
}

bool parallel(const Morphism& a, const Morphism& b) { return a.src() == b.src() && a.tgt() == b.tgt(); }

}  // namespace

LawReport check_laws(const CatGradedMonad& t, std::size_t samples, std::uint64_t seed) {
  LawReport report;
  report.subject = t.name;
  monad_laws(t, samples, seed, report);
  return report;
}

LawReport check_laws(const TwoCatGradedMonad& t2, std::size_t samples, std::uint64_t seed) {
  const auto& t = t2.base;
  LawReport report;
  report.subject = t.name;
  monad_laws(t, samples, seed, report);

  auto ms = indices_of(t);
  auto leaves = leaves_of(t);
  std::vector<std::pair<Morphism, Morphism>> cells;
  for (const auto& f : ms)
    for (const auto& g : ms)
      if (parallel(f, g) && t2.index2.leq(f, g)) cells.emplace_back(f, g);
  std::vector<std::tuple<Morphism, Morphism, Morphism>> chains;
  for (const auto& [f, g] : cells)
    for (const auto& h : ms)
      if (parallel(g, h) && t2.index2.leq(g, h)) chains.emplace_back(f, g, h);
  std::vector<std::pair<std::pair<Morphism, Morphism>, std::pair<Morphism, Morphism>>> squares;
  for (const auto& a : cells)
    for (const auto& b : cells)
      if (a.first.tgt() == b.first.src()) squares.emplace_back(a, b);
  if (cells.empty()) return report;

  {
    Probe p(t, report, "approx-identity", seed);
    for (std::size_t i = 0; i < samples; ++i) {
      const auto& f = pick(ms, p.rng());
      auto v = p.draw(f, leaves);
      if (!v) { p.skip(); continue; }
      p.compare(names({&f}), v->to_string(), [&] { return t2.approx(f, f, *v); }, [&] { return *v; });
    }
  }
  {
    Probe p(t, report, "closure-approx", seed);
    for (std::size_t i = 0; i < samples; ++i) {
      const auto& [f, g] = pick(cells, p.rng());
      auto v = p.draw(f, leaves);
      if (!v) { p.skip(); continue; }
      p.holds(names({&f, &g}), v->to_string(), [&] { return t.valid(g, t2.approx(f, g, *v)); });
    }
  }
  {
    Probe p(t, report, "approx-vertical", seed);
    for (std::size_t i = 0; i < samples; ++i) {
      const auto& [f, g, h] = pick(chains, p.rng());
      auto v = p.draw(f, leaves);
      if (!v) { p.skip(); continue; }
      p.compare(names({&f, &g, &h}), v->to_string(), [&] { return t2.approx(g, h, t2.approx(f, g, *v)); },
                [&] { return t2.approx(f, h, *v); });
    }
  }
  {
    Probe p(t, report, "approx-naturality", seed);
    for (std::size_t i = 0; i < samples; ++i) {
      const auto& [f, g] = pick(cells, p.rng());
      const auto& [fname, k] = p.fn();
      auto v = p.draw(f, leaves);
      if (!v) { p.skip(); continue; }
      p.compare(names({&f, &g}), fname + " on " + v->to_string(), [&] { return t.map(g, k, t2.approx(f, g, *v)); },
                [&] { return t2.approx(f, g, t.map(f, k, *v)); });
    }
  }
  {
    Probe p(t, report, "approx-unit", seed);
    for (std::size_t i = 0; i < samples; ++i) {
      const auto& f = pick(ms, p.rng());
      auto a = p.leaf(leaves);
      auto id = t.index.identity(f.src());
      p.compare(names({&id}), a.to_string(), [&] { return t2.approx(id, id, t.unit(f.src(), a)); },
                [&] { return t.unit(f.src(), a); });
    }
  }
  {
    Probe p(t, report, "approx-horizontal", seed);
    for (std::size_t i = 0; i < samples; ++i) {
      const auto& [fc, gc] = pick(squares, p.rng());
      const auto& [f, f2] = fc;
      const auto& [g, g2] = gc;
      auto inner = p.pool(g, leaves);
      auto v = inner ? p.draw(f, *inner) : std::nullopt;
      if (!v) { p.skip(); continue; }
      p.compare(names({&f, &f2, &g, &g2}), v->to_string(),
                [&] {
                  auto lifted = t.map(f, [&](const Value& x) { return t2.approx(g, g2, x); }, *v);
                  return t.mult(f2, g2, t2.approx(f, f2, lifted));
                },
                [&] {
                  return t2.approx(t.index.compose(g, f), t.index.compose(g2, f2), t.mult(f, g, *v));
                });
    }
  }
  return report;
}

LawReport check_laws(const GeneralisedUnit& u, std::size_t samples, std::uint64_t seed) {
  const auto& t = u.monad;
  LawReport report;
  report.subject = t.name + " generalised unit";

  std::vector<Morphism> ms;
  for (const auto& m : indices_of(t))
    if (u.sub.member(m)) ms.push_back(m);
  auto ix = collect(t.index, ms);
  auto leaves = leaves_of(t);
  if (ms.empty()) return report;

  {
    Probe p(t, report, "geneta-identity", seed);
    for (std::size_t i = 0; i < samples; ++i) {
      const auto& f = pick(ms, p.rng());
      auto a = p.leaf(leaves);
      auto id = t.index.identity(f.src());
      p.compare(names({&id}), a.to_string(), [&] { return u.geneta(id, a); }, [&] { return t.unit(f.src(), a); });
    }
  }
  {
    Probe p(t, report, "closure-geneta", seed);
    for (std::size_t i = 0; i < samples; ++i) {
      const auto& f = pick(ms, p.rng());
      auto a = p.leaf(leaves);
      p.holds(names({&f}), a.to_string(), [&] { return t.valid(f, u.geneta(f, a)); });
    }
  }
  {
    Probe p(t, report, "geneta-naturality", seed);
    for (std::size_t i = 0; i < samples; ++i) {
      const auto& f = pick(ms, p.rng());
      const auto& [fname, k] = p.fn();
      auto a = p.leaf(leaves);
      p.compare(names({&f}), fname + " on " + a.to_string(), [&] { return t.map(f, k, u.geneta(f, a)); },
                [&] { return u.geneta(f, k(a)); });
    }
  }
  {
    Probe p(t, report, "geneta-composition", seed);
    for (std::size_t i = 0; i < samples; ++i) {
      const auto& [f, g] = pick(ix.pairs, p.rng());
      auto a = p.leaf(leaves);
      p.compare(names({&f, &g}), a.to_string(),
                [&] {
                  auto lifted = t.map(f, [&](const Value& x) { return u.geneta(g, x); }, u.geneta(f, a));
                  return t.mult(f, g, lifted);
                },
                [&] { return u.geneta(t.index.compose(g, f), a); });
    }
  }
  return report;
}

LawReport check_laws(const Homomorphism& hom, std::size_t samples, std::uint64_t seed) {
  const auto& t = hom.source;
  const auto& s = hom.target;
  LawReport report;
  report.subject = t.name + " -> " + s.name;
  auto ix = collect(t.index, indices_of(t));
  auto leaves = leaves_of(t);
  if (ix.all.empty()) return report;

  {
    Probe p(t, report, "hom-unit", seed);
    for (std::size_t i = 0; i < samples; ++i) {
      const auto& f = pick(ix.all, p.rng());
      auto a = p.leaf(leaves);
      auto id = t.index.identity(f.src());
      p.compare(names({&id}), a.to_string(), [&] { return hom.gamma(id, t.unit(f.src(), a)); },
                [&] { return s.unit(f.src(), a); });
    }
  }
  {
    Probe p(t, report, "hom-naturality", seed);
    for (std::size_t i = 0; i < samples; ++i) {
      const auto& f = pick(ix.all, p.rng());
      const auto& [fname, k] = p.fn();
      auto v = p.draw(f, leaves);
      if (!v) { p.skip(); continue; }
      p.compare(names({&f}), fname + " on " + v->to_string(), [&] { return s.map(f, k, hom.gamma(f, *v)); },
                [&] { return hom.gamma(f, t.map(f, k, *v)); });
    }
  }
  {
    Probe p(t, report, "hom-mult", seed);
    for (std::size_t i = 0; i < samples; ++i) {
      const auto& [f, g] = pick(ix.pairs, p.rng());
      auto inner = p.pool(g, leaves);
      auto v = inner ? p.draw(f, *inner) : std::nullopt;
      if (!v) { p.skip(); continue; }
      p.compare(names({&f, &g}), v->to_string(),
                [&] { return hom.gamma(t.index.compose(g, f), t.mult(f, g, *v)); },
                [&] {
                  auto mapped = t.map(f, [&](const Value& x) { return hom.gamma(g, x); }, *v);
                  return s.mult(f, g, hom.gamma(f, mapped));
                });
    }
  }
  return report;
}

}  // namespace cgm
