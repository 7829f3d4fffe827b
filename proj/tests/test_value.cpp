#include <doctest.h>

#include "cgm/error.hpp"
#include "cgm/value.hpp"

using namespace cgm;

TEST_CASE("rationals parse and print exactly") {
  CHECK(rational_to_string(parse_rational("2/10")) == "1/5");
  CHECK(rational_to_string(parse_rational("3")) == "3");
  CHECK(parse_rational("19/100") < parse_rational("1/5"));
}

TEST_CASE("distributions are canonical") {
  auto a = Value::dist({{Value::integer(1), Rational(1, 2)}, {Value::integer(0), Rational(1, 2)}});
  auto b = Value::dist({{Value::integer(0), Rational(1, 4)},
                        {Value::integer(1), Rational(1, 2)},
                        {Value::integer(0), Rational(1, 4)}});
  CHECK(a == b);
  CHECK(a.weights().size() == 2);
  CHECK(a.weights()[0].first == Value::integer(0));
  CHECK_THROWS_AS(Value::dist({{Value::integer(0), Rational(1, 3)}}), Error);

  DistBuilder builder;
  builder.add(Value::integer(3), Rational(1, 3));
  builder.add(Value::integer(3), Rational(2, 3));
  builder.add(Value::integer(4), Rational(0));
  CHECK(builder.build() == Value::point(Value::integer(3)));
}

TEST_CASE("tables reject duplicate keys and look up by key") {
  auto t = Value::table({{Value::integer(1), Value::str("b")}, {Value::integer(0), Value::str("a")}});
  CHECK(t.entries()[0].first == Value::integer(0));
  CHECK(t.at(Value::integer(1)) == Value::str("b"));
  CHECK(t.lookup(Value::integer(7)) == nullptr);
  CHECK_THROWS_AS(t.at(Value::integer(7)), Error);
  CHECK_THROWS_AS(Value::table({{Value::unit(), Value::unit()}, {Value::unit(), Value::unit()}}), Error);
}

TEST_CASE("structural equality and ordering") {
  auto p = Value::pair(Value::integer(1), Value::seq({Value::boolean(true)}));
  auto q = Value::pair(Value::integer(1), Value::seq({Value::boolean(true)}));
  CHECK(p == q);
  CHECK(p.hash() == q.hash());
  CHECK(Value::integer(1) < Value::integer(2));
  CHECK(Value::integer(5) != Value::rational(Rational(5)));
  CHECK(p.to_string() == "(1, [true])");
  CHECK(Value::tag("in1", Value::unit()).to_string() == "in1(())");
}
