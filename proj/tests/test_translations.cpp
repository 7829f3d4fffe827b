#include <doctest.h>

#include <set>

#include "cgm/error.hpp"
#include "cgm/translations.hpp"

using namespace cgm;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidValue;
}

bool failed_law(const LawReport& r, const std::string& law) {
  for (const auto& f : r.failures)
    if (f.law == law) return true;
  return false;
}

// Typed state whose morphism mapping forgets to reindex the input state.
ParameterisedMonad forgetful_state(int n) {
  auto p = typed_state_param(n);
  auto morph = p.morph;
  auto index = p.index;
  p.name = "forgetful";
  p.morph = [morph, index](const Morphism& f, const Morphism& g, const ValueFn& h, const Value& c) {
    if (f.src() == f.tgt()) return morph(index.identity(f.src()), g, h, c);
    return morph(f, g, h, c);
  };
  return p;
}

// Brute-force count of swap-equivariant tables {0,1} -> leaves x {0,1}.
std::size_t equivariant_count(std::size_t leaves) {
  std::size_t n = 0;
  for (std::size_t a0 = 0; a0 < leaves; ++a0)
    for (std::size_t s0 = 0; s0 < 2; ++s0)
      for (std::size_t a1 = 0; a1 < leaves; ++a1)
        for (std::size_t s1 = 0; s1 < 2; ++s1)
          if (a1 == a0 && s1 == 1 - s0) ++n;
  return n;
}

}  // namespace

TEST_CASE("plain monads survive the terminal-category translation") {
  CHECK(check_monad_laws(list_monad(), 200, 1).ok());
  CHECK(check_monad_laws(maybe_monad(), 200, 1).ok());
  CHECK(check_laws(monad_to_catgraded(list_monad()), 200, 1).ok());
  CHECK(check_laws(monad_to_catgraded(maybe_monad()), 200, 1).ok());
}

TEST_CASE("graded-monad law failures carry over to the translation") {
  auto good = graded_list(3);
  CHECK(check_graded_laws(good, 300, 4).ok());
  CHECK(check_laws(graded_to_catgraded(good), 300, 4).ok());

  auto bad = broken_graded_list(3);
  auto direct = check_graded_laws(bad, 300, 4);
  auto translated = check_laws(graded_to_catgraded(bad), 300, 4);
  CHECK(failed_law(direct, "associativity"));
  CHECK(failed_law(translated, "associativity"));

  // A graded witness replayed on the translated side.
  auto t = graded_to_catgraded(bad);
  auto one = list_grade(1);
  auto v = Value::seq({Value::integer(0)});
  CHECK(bad.mult(Value::integer(1), Value::integer(1), bad.unit(v)) == t.mult(one, one, t.unit(star(), v)));
  CHECK_FALSE(t.mult(one, one, t.unit(star(), v)) == v);
}

TEST_CASE("discrete parameterised monads round trip through indiscrete grading") {
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    auto p = typed_state_discrete(n);
    CHECK(roundtrip_discrete_param(p).ok());
    auto t = discrete_param_to_catgraded(p);
    CHECK(t.index.kind() == CategoryKind::Indiscrete);
    CHECK(check_laws(t, 150, 9).ok());
  }
  CHECK(code_of([] { discrete_param_to_catgraded(typed_state_param(2)); }) == ErrorCode::NotDiscrete);
  CHECK(code_of([] { catgraded_to_discrete_param(graded_to_catgraded(graded_list(2))); }) ==
        ErrorCode::NotIndiscrete);
}

TEST_CASE("typed state round trips through the generalised-unit construction") {
  for (int n = 1; n <= 2; ++n) {
    CAPTURE(n);
    auto p = typed_state_param(n);
    auto r = roundtrip_param(p, 100, 3);
    CHECK(r.ok());
    CHECK(r.checked.at("morph") > 0);
    CHECK(r.checked.at("bifunctor-composition") > 0);
    CHECK(r.checked.at("bifunctor-identity") == static_cast<std::size_t>(n * n));
  }
}

TEST_CASE("the forward construction satisfies the graded laws with a lawful unit") {
  auto g = param_to_catgraded_genunit(typed_state_param(2));
  CHECK(g.monad.index.kind() == CategoryKind::PairCompletion);
  CHECK(check_laws(g.monad, 150, 11).ok());
  CHECK(check_laws(g, 150, 11).ok());
}

TEST_CASE("dinaturality holds for typed state and fails when reindexing is dropped") {
  CHECK(check_dinaturality(typed_state_param(2)).ok());
  CHECK(check_dinaturality(typed_state_param(3), 200).ok());

  auto broken = forgetful_state(2);
  auto r = check_dinaturality(broken);
  CHECK(failed_law(r, "eta-dinatural"));
  CHECK(code_of([&] { param_to_catgraded_genunit(broken); }) == ErrorCode::DinaturalityFailure);
  auto trip = roundtrip_param(broken, 10, 0);
  CHECK(failed_law(trip, "geneta-definitions"));
}

TEST_CASE("read and store typecheck at their parameters") {
  auto space = function_space(2);
  auto p = typed_state(space);
  ObjectId s1("S1"), s2("S2");
  CHECK(p.valid(s2, s2, tstate_read(space, s2)));
  CHECK(p.valid(s2, s1, tstate_store(space, s2, Value::integer(0))));
  CHECK_FALSE(p.valid(s2, s1, tstate_store(space, s2, Value::integer(1))));
}

TEST_CASE("constructive restriction keeps the laws") {
  auto p = typed_state_param(2);
  auto only_total = function_space(2, [](int from, int to, const std::vector<int>&) { return from <= to; });
  auto g = constructive_param(p, only_total.category);
  CHECK(check_laws(g.monad, 150, 13).ok());
  CHECK(check_laws(g, 150, 13).ok());
}

TEST_CASE("end over a discrete index is the plain product") {
  auto m = z2_index(false);
  auto p = typed_state(binary_states(m));
  for (const auto& f : m.category.objects()) {
    auto product = end_product(p, m, f, p.leaves);
    auto elements = end_elements(p, m, f, p.leaves);
    CHECK(product.size() == 256);
    CHECK(elements == product);
  }
}

TEST_CASE("end over Z2 with swaps keeps only equivariant families") {
  auto m = z2_index(true);
  auto p = typed_state(binary_states(m));
  CHECK(check_category_laws(m.category).ok());
  for (const auto& f : m.category.objects()) {
    CAPTURE(f.name());
    auto elements = end_elements(p, m, f, p.leaves);
    CHECK(elements.size() == equivariant_count(p.leaves.size()));
    CHECK(end_product(p, m, f, p.leaves).size() == 256);
  }
  auto g = end_graded_from_param(p, m);
  CHECK(check_graded_laws(g, 200, 17).ok());
  auto exhaustive = check_graded_laws_exhaustive(g);
  CHECK(exhaustive.ok());
  CHECK(exhaustive.checked.at("associativity") > 0);
  CHECK(check_laws(graded_to_catgraded(g), 150, 17).ok());
  auto a = ObjectId("a").value();
  Rng rng(1);
  CHECK(g.valid(a, *g.sample(a, rng, p.leaves)));
}

TEST_CASE("end over the trivial index is the monad itself") {
  auto m = trivial_monoidal_index();
  StateSpace space{m.category, {{star(), {Value::integer(0), Value::integer(1)}}},
                   [](const Morphism&, const Value& s) { return s; }};
  auto p = typed_state(space);
  auto elements = end_elements(p, m, star(), p.leaves);
  CHECK(elements.size() == p.enumerate(star(), star(), p.leaves).size());
  CHECK(code_of([] {
          MonoidalIndex free{lock_category(), [](const ObjectId& a, const ObjectId&) { return a; }, ObjectId("free"),
                             [](const Morphism& u, const ObjectId&) { return u; }};
          end_elements(typed_state_param(1), free, ObjectId("free"), {});
        }) == ErrorCode::InfeasibleEnd);
}
