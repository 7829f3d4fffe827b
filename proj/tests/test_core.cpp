#include <doctest.h>

#include "cgm/core.hpp"
#include "cgm/error.hpp"
#include "cgm/instances.hpp"
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

}  // namespace

TEST_CASE("identity instance satisfies every law on the lock protocol") {
  auto r = check_laws(identity_instance(lock_category()), 200, 1);
  CHECK(r.ok());
  CHECK(r.checked.at("associativity") > 0);
  CHECK(r.checked.at("kleisli-associativity") > 0);
}

TEST_CASE("graded list laws hold and the broken variant fails associativity") {
  auto good = check_laws(graded_list_instance(3), 300, 7);
  CHECK(good.ok());
  CHECK(good.checked.at("approx-horizontal") > 0);

  auto bad = check_laws(broken_graded_list_instance(3), 300, 7);
  CHECK_FALSE(bad.ok());
  CHECK(failed_law(bad, "associativity"));
  CHECK(failed_law(bad, "left-unit"));
}

TEST_CASE("law reports are reproducible for a fixed seed") {
  auto a = check_laws(broken_graded_list_instance(3), 100, 42);
  auto b = check_laws(broken_graded_list_instance(3), 100, 42);
  CHECK(a.to_text() == b.to_text());
  CHECK(a.failures == b.failures);
}

TEST_CASE("reversal is a list homomorphism, sorting is not") {
  CHECK(check_laws(list_reverse_homomorphism(3), 300, 3).ok());
  auto sorted = check_laws(list_sort_homomorphism(3), 300, 3);
  CHECK(failed_law(sorted, "hom-mult"));
}

TEST_CASE("bind multiplies grades and concatenates choices") {
  auto t = graded_list_instance(6).base;
  auto c = list_choose({Value::integer(1), Value::integer(2)});
  auto r = cgm::bind(t, c, list_grade(3), [](const Value& a) {
    return GradedComputation{list_grade(3), Value::seq({a, a, Value::integer(0)})};
  });
  CHECK(r.index == list_grade(6));
  CHECK(r.payload.to_string() == "[1, 1, 0, 2, 2, 0]");
  CHECK(code_of([&] {
          cgm::bind(t, c, list_grade(3), [](const Value&) { return list_fail(); });
        }) == ErrorCode::InconsistentContinuationIndex);
}

TEST_CASE("concurrent state laws hold and spawn rejects a held lock") {
  auto st = concst_instance();
  CHECK(check_laws(st.monad, 200, 5).ok());

  auto& t = st.monad;
  auto body = cgm::bind(t, st.lock(), st.step("put"), [&](const Value&) { return st.put(Value::integer(2)); });
  CHECK(code_of([&] { st.spawn(body); }) == ErrorCode::SpawnGradeError);

  auto done = cgm::bind(t, body, st.step("unlock"), [&](const Value&) { return st.unlock(); });
  auto spawned = st.spawn(done);
  CHECK(st.run(spawned, 0).second() == Value::integer(2));
}

TEST_CASE("approximation needs a 2-cell and the generalised unit needs a member") {
  auto t = graded_list_instance(3);
  auto c = list_choose({Value::integer(1)});
  CHECK(approximate(t, list_grade(1), list_grade(2), c).index == list_grade(2));
  CHECK(code_of([&] { approximate(t, list_grade(1), list_grade(0), c); }) == ErrorCode::NoTwoCell);

  CHECK(code_of([&] { bottom_unit_genunit(t); }) == ErrorCode::NotBottom);
  auto positive = graded_list_instance(3);
  positive.base.law_indices = {list_grade(1), list_grade(2), list_grade(3)};
  auto u = bottom_unit_genunit(positive);
  CHECK(check_laws(u, 100, 2).ok());
  CHECK(gen_unit(u, list_grade(2), Value::integer(5)).payload.to_string() == "[5]");
  CHECK(code_of([&] { gen_unit(u, list_grade(0), Value::integer(5)); }) == ErrorCode::NotInSubcategory);
}

TEST_CASE("strength pairs the context with every result") {
  auto t = graded_list_instance(3).base;
  auto s = strength(t, Value::str("x"), list_choose({Value::integer(1), Value::integer(2)}));
  CHECK(s.payload.to_string() == "[(\"x\", 1), (\"x\", 2)]");
}

TEST_CASE("glist length bound holds for every list and continuation up to grade 4") {
  std::vector<Value> ab{Value::str("a"), Value::str("b")};
  auto r = check_list_bound_exhaustive(graded_list(4), 4, ab);
  CHECK(r.ok());
  // Lists of length <= m over two letters number 2^(m+1) - 1.
  std::int64_t lists = 0, conts = 0, approx = 0;
  for (int m = 0; m <= 4; ++m) {
    std::int64_t cm = (std::int64_t{1} << (m + 1)) - 1;
    lists += cm;
    conts += cm * cm;
    approx += cm * (4 - m + 1);
  }
  std::int64_t cont_weighted = 0;
  for (int n = 0; n <= 4; ++n) {
    std::int64_t cn = (std::int64_t{1} << (n + 1)) - 1;
    cont_weighted += cn * cn * (4 - n + 1);
  }
  CHECK(static_cast<std::int64_t>(r.checked.at("length-bound")) == lists * conts);
  CHECK(static_cast<std::int64_t>(r.checked.at("approx-mult")) == approx * cont_weighted);

  auto doubled = graded_list(4);
  auto inner = doubled.mult;
  doubled.mult = [inner](const Value& m, const Value& n, const Value& v) {
    auto once = inner(m, n, v).items();
    auto twice = once;
    twice.insert(twice.end(), once.begin(), once.end());
    return Value::seq(twice);
  };
  auto bad = check_list_bound_exhaustive(doubled, 2, ab);
  CHECK_FALSE(bad.ok());
  CHECK(bad.failures.front().law == "length-bound");
}
