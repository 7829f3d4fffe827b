#include <doctest.h>

#include "cgm/ahl.hpp"
#include "cgm/error.hpp"

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

Rational q(const char* text) { return parse_rational(text); }

// Count of (x, y) in 0..9 x 0..9 violating x != 0 && y != 0.
Rational grid_failure() {
  int bad = 0;
  for (int x = 0; x < 10; ++x)
    for (int y = 0; y < 10; ++y) bad += (x == 0 || y == 0);
  return Rational(bad, 100);
}

}  // namespace

TEST_CASE("states enumerate every in-range assignment") {
  ProgramStates st({{"x", 0, 2}, {"y", 5, 6}});
  CHECK(st.all().size() == 6);
  CHECK(st.render(st.all().front()) == "{x=0, y=5}");
  CHECK(st.entails(parse_expr("x == 0"), parse_expr("x <= 1")));
  CHECK_FALSE(st.entails(parse_expr("x <= 1"), parse_expr("x == 0")));
  CHECK(code_of([&] { st.assign(st.all()[0], "y", 9); }) == ErrorCode::RangeError);
}

TEST_CASE("skip and assignment sit at bound zero") {
  auto a = ahl_instance({{"x", 0, 9}});
  auto post = parse_expr("x <= 5");
  auto s = a.skip(post);
  CHECK(ahl_beta(s.index) == 0);
  CHECK(a.monad.base.valid(s.index, s.payload));

  auto asg = a.assign("x", parse_expr("x + 1"), post);
  CHECK(ahl_pre(asg.index).to_string() == "x + 1 <= 5");
  CHECK(a.monad.base.valid(asg.index, asg.payload));
  CHECK(code_of([&] { a.assign("x", parse_expr("x + 1"), parse_expr("x > 0")); }) == ErrorCode::RangeError);
}

TEST_CASE("one uniform sample misses x != 0 with probability 1/10") {
  auto a = ahl_instance({{"x", 0, 9}});
  auto post = parse_expr("x != 0");
  auto c = a.sample_uniform("x", 0, 9, q("1/10"), parse_expr("true"), post);
  auto f = a.failure(c.payload, parse_expr("true"), post);
  CHECK(f.probability == q("1/10"));
  CHECK(a.monad.base.valid(c.index, c.payload));
  auto tighter = ahl_index(q("1/20"), parse_expr("true"), post);
  CHECK_FALSE(a.monad.base.valid(tighter, c.payload));
  for (const auto& [s, row] : c.payload.entries()) {
    Rational total = 0;
    for (const auto& [o, w] : row.weights()) total += w;
    CHECK(total == 1);
  }
}

TEST_CASE("two samples compose under the union bound") {
  auto a = ahl_instance({{"x", 0, 9}, {"y", 0, 9}});
  auto t = a.monad.base;
  auto x_ok = parse_expr("x != 0"), both = parse_expr("x != 0 && y != 0");
  auto first = a.sample_uniform("x", 0, 9, q("1/10"), parse_expr("true"), x_ok);
  auto second = a.sample_uniform("y", 0, 9, q("1/10"), x_ok, both);
  auto seq = cgm::bind(t, first, second.index, [&](const Value&) { return second; });
  CHECK(ahl_beta(seq.index) == q("1/5"));
  CHECK(a.failure(seq.payload, parse_expr("true"), both).probability == grid_failure());
  CHECK(grid_failure() == q("19/100"));
  CHECK(t.valid(seq.index, seq.payload));
  CHECK_FALSE(t.valid(ahl_index(q("1/10"), parse_expr("true"), both), seq.payload));
}

TEST_CASE("bounds saturate at one") {
  auto a = ahl_instance({{"x", 0, 1}});
  auto phi = parse_expr("true");
  auto f = ahl_index(q("7/10"), phi, phi), g = ahl_index(q("1/2"), phi, phi);
  CHECK(ahl_beta(a.monad.base.index.compose(g, f)) == 1);
}

TEST_CASE("generalised unit needs a valid implication at bound zero") {
  auto a = ahl_instance({{"x", 0, 2}});
  auto ok = ahl_index(0, parse_expr("x == 0"), parse_expr("x <= 1"));
  CHECK(gen_unit(a.unit, ok, Value::integer(4)).payload == a.monad.base.unit(ok.src(), Value::integer(4)));
  auto bad = ahl_index(0, parse_expr("x <= 1"), parse_expr("x == 0"));
  CHECK(code_of([&] { a.unit.geneta(bad, Value::integer(4)); }) == ErrorCode::InvalidImplication);
}

TEST_CASE("law suites pass, and forgetting bounds is caught") {
  auto a = ahl_law_instance();
  CHECK(check_laws(a.monad.base, 200, 0).ok());
  CHECK(check_laws(a.monad, 200, 0).ok());
  CHECK(check_laws(a.unit, 200, 0).ok());

  auto broken = check_laws(ahl_law_instance(true).monad.base, 200, 0);
  CHECK_FALSE(broken.ok());
  bool closure = false;
  for (const auto& f : broken.failures) closure = closure || f.law == "closure-mult";
  CHECK(closure);
}
