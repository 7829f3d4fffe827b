#include <doctest.h>

#include "cgm/error.hpp"
#include "cgm/indexcat.hpp"

using namespace cgm;

namespace {

Morphism gen(const IndexCategory& c, const std::string& name) {
  for (const auto& e : c.edges()) {
    if (e.name == name) return Morphism::path(e.src, e.tgt, {name});
  }
  FAIL("no generator " << name);
  throw;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidValue;
}

}  // namespace

TEST_CASE("lock protocol composes to a free-to-free path") {
  auto c = lock_category();
  auto lock = gen(c, "lock"), get = gen(c, "get"), put = gen(c, "put"), unlock = gen(c, "unlock");
  auto whole = c.compose(unlock, c.compose(put, c.compose(get, lock)));
  CHECK(whole.describe() == "lock;get;put;unlock : free -> free");
  CHECK(whole.generators() == std::vector<std::string>{"lock", "get", "put", "unlock"});
  CHECK(c.compose(c.identity(ObjectId("critical")), lock) == lock);
  CHECK(code_of([&] { c.compose(get, unlock); }) == ErrorCode::CompositionMismatch);
  CHECK(code_of([&] { c.identity(ObjectId("missing")); }) == ErrorCode::UnknownObject);
  CHECK(code_of([&] {
          free_category({ObjectId("a")}, {{"f", ObjectId("a"), ObjectId("b")}});
        }) == ErrorCode::DanglingEdge);
  CHECK(check_category_laws(c).ok());
}

TEST_CASE("a single object without edges has only its identity") {
  auto c = free_category({ObjectId("a")}, {});
  CHECK(c.morphisms().size() == 1);
}

TEST_CASE("monoid categories") {
  auto plus = monoid_to_category(nat_plus());
  auto m = [](std::int64_t n) { return Morphism::monoid_elem(star(), Value::integer(n)); };
  CHECK(plus.compose(m(3), m(2)) == m(5));
  CHECK(monoid_to_category(nat_times()).identity(star()) == m(1));
  CHECK(plus.identity(star()) == m(0));

  auto prob = monoid_to_category(prob_sat());
  auto r = [](const char* s) { return Morphism::monoid_elem(star(), Value::rational(parse_rational(s))); };
  CHECK(prob.compose(r("5/10"), r("7/10")) == r("1"));
  CHECK(prob.compose(r("1/10"), r("1/10")) == r("2/10"));
  CHECK(check_category_laws(prob).ok());
  CHECK(code_of([&] { plus.compose(r("1/2"), m(1)); }) == ErrorCode::ForeignMorphism);
}

TEST_CASE("pomonoid 2-categories") {
  auto two = pomonoid_to_2category(nat_times());
  auto m = [](std::int64_t n) { return Morphism::monoid_elem(star(), Value::integer(n)); };
  CHECK(two.leq(m(2), m(5)));
  CHECK_FALSE(two.leq(m(5), m(2)));
  CHECK(check_two_category_laws(two, two.base.morphisms()).ok());

  auto prob = pomonoid_to_2category(prob_sat());
  CHECK(check_two_category_laws(prob, prob.base.morphisms()).ok());
}

TEST_CASE("discrete and indiscrete closures") {
  auto c = lock_category();
  auto d = discretise(c);
  CHECK(d.morphisms().size() == 2);
  CHECK(discretise(d).morphisms() == d.morphisms());
  CHECK(code_of([&] { d.compose(d.identity(ObjectId("free")), d.identity(ObjectId("critical"))); }) ==
        ErrorCode::CompositionMismatch);

  auto n = indiscretise(free_category({ObjectId("a"), ObjectId("b"), ObjectId("c")}, {}));
  ObjectId a("a"), b("b"), cc("c");
  CHECK(n.homset(a, b) == std::vector<Morphism>{Morphism::pair(a, b)});
  CHECK(n.compose(Morphism::pair(b, cc), Morphism::pair(a, b)) == Morphism::pair(a, cc));
  CHECK(n.identity(a) == Morphism::pair(a, a));
  CHECK(indiscretise(n).morphisms() == n.morphisms());
  CHECK(check_category_laws(n).ok());

  auto sym = indiscrete_symbolic("Prop", [](const ObjectId&) { return true; });
  CHECK(code_of([&] { sym.objects(); }) == ErrorCode::SymbolicObjects);
  CHECK(code_of([&] { discretise(sym); }) == ErrorCode::SymbolicObjects);
}

TEST_CASE("pair completion") {
  auto c = lock_category();
  auto p = pair_completion(c);
  auto lock = gen(c, "lock"), get = gen(c, "get"), unlock = gen(c, "unlock");
  ObjectId free("free"), critical("critical");
  CHECK(p.compose(Morphism::inj1(get), Morphism::inj1(lock)) == Morphism::inj1(c.compose(get, lock)));
  CHECK(p.compose(Morphism::inj2(critical, free), Morphism::inj1(lock)) == Morphism::inj2(free, free));
  CHECK(p.identity(free) == Morphism::inj1(Morphism::identity(free)));
  CHECK(check_category_laws(p, 2).ok());

  // The Inj1 embedding preserves composition and identities.
  auto ms = c.morphisms(2);
  for (const auto& f : ms)
    for (const auto& g : ms)
      if (f.tgt() == g.src())
        CHECK(p.compose(Morphism::inj1(g), Morphism::inj1(f)) == Morphism::inj1(c.compose(g, f)));
  (void)unlock;
}

TEST_CASE("product categories compose componentwise") {
  auto prob = monoid_to_category(prob_sat());
  auto n = indiscretise(free_category({ObjectId("p"), ObjectId("q")}, {}));
  auto pc = product(prob, n);
  CHECK(check_category_laws(pc).ok());
  auto obj = ObjectId(Value::pair(star().value(), Value::str("p")));
  CHECK(pc.identity(obj).src() == obj);
}

TEST_CASE("wide subcategories") {
  auto c = lock_category();
  CHECK(check_wide_subcategory(whole(c), c.morphisms(2)).ok());
  CHECK(check_wide_subcategory(identities_only(c), c.morphisms(2)).ok());
  WideSubcategory no_ids{c, [](const Morphism& m) { return m.word() == Morphism::Word::Path; }};
  CHECK_FALSE(check_wide_subcategory(no_ids, c.morphisms(2)).ok());
}
