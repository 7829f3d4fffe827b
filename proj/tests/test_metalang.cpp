#include <doctest.h>

#include <functional>
#include <random>

#include "cgm/error.hpp"
#include "cgm/metalang.hpp"

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

const char* kLockProgram = R"(instance concst
init 41
do {
  lock;
  x <- get;
  put(x + 1);
  unlock
}
)";

std::string lock_program(const std::vector<std::string>& prims) {
  std::string text = "instance concst\ndo {\n";
  for (const auto& p : prims) text += "  " + (p == "put" ? std::string("put(1)") : p) + ";\n";
  return text + "  pure 0\n}\n";
}

// Hand-written lock discipline: lock only when free, get/put/unlock only when held, end free.
bool lock_dfa(const std::vector<std::string>& prims) {
  bool held = false;
  for (const auto& p : prims) {
    if (p == "lock") {
      if (held) return false;
      held = true;
    } else {
      if (!held) return false;
      if (p == "unlock") held = false;
    }
  }
  return !held;
}

Rational q(const char* text) { return parse_rational(text); }

AhlVerdict ahl(const std::string& text) { return check_ahl(parse_ahl(text)); }

const char* kTwoSamples = R"(var x : int[0..9]
var y : int[0..9]
seq {
  sample x uniform(0, 9) bound 1/10 pre true post x != 0;
  sample y uniform(0, 9) bound 1/10 pre x != 0 post x != 0 && y != 0
} bound 2/10 pre true post x != 0 && y != 0
)";

}  // namespace

TEST_CASE("the lock program increments the store") {
  auto p = parse_program(kLockProgram);
  auto r = run_program(p);
  CHECK(r.type.index.describe() == "lock;get;put;unlock : free -> free");
  CHECK(r.rendered == "result: ()\nstore: 41 -> 42");
}

TEST_CASE("lock discipline violations are grade errors") {
  auto before = "instance concst\ndo {\n  x <- get;\n  lock;\n  unlock;\n  pure x\n}\n";
  CHECK(code_of([&] { run_program(parse_program(before)); }) == ErrorCode::GradeMismatch);
  try {
    run_program(parse_program(before));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("3:8") != std::string::npos);
  }
  auto unfinished = "instance concst\ndo {\n  lock;\n  put(3)\n}\n";
  CHECK(code_of([&] { run_program(parse_program(unfinished)); }) == ErrorCode::GradeMismatch);
  auto spawned = "instance concst\ndo {\n  spawn do { lock; put(1) };\n  pure 0\n}\n";
  CHECK(code_of([&] { run_program(parse_program(spawned)); }) == ErrorCode::SpawnGradeError);
  auto good_spawn = "instance concst\ndo {\n  spawn do { lock; put(7); unlock };\n  lock;\n  x <- get;\n  unlock;\n  pure x\n}\n";
  CHECK(run_program(parse_program(good_spawn)).rendered == "result: 7\nstore: 0 -> 7");
  CHECK(code_of([&] { run_program(parse_program("instance concst\ndo { fork }")); }) == ErrorCode::UnknownPrim);
  CHECK(code_of([&] { parse_program("instance concst\ndo { pure y }"); }) == ErrorCode::ParseError);
}

TEST_CASE("typechecking agrees with the lock automaton on every short sequence") {
  const std::vector<std::string> alphabet = {"lock", "unlock", "get", "put"};
  std::vector<std::vector<std::string>> seqs = {{}};
  std::size_t checked = 0, accepted = 0;
  for (std::size_t len = 0; len <= 5; ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto& s : seqs) {
      auto p = parse_program(lock_program(s));
      bool typed = true;
      try {
        run_program(p);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::GradeMismatch);
        typed = false;
      }
      CHECK(typed == lock_dfa(s));
      ++checked;
      accepted += typed;
      for (const auto& a : alphabet) {
        auto t = s;
        t.push_back(a);
        next.push_back(t);
      }
    }
    seqs = std::move(next);
  }
  CHECK(checked == 1365);
  CHECK(accepted > 0);
}

TEST_CASE("printing and parsing round-trips") {
  const std::vector<std::string> sources = {
      kLockProgram,
      "instance glist\ndo {\n  x <- choose(1, 2);\n  do { y <- choose(x, (x, 3)); fail };\n  pure ((x, 1), -x * 2)\n}\n",
      "instance tstate\nstates 2\nstart S2\ninit 1\ndo { v <- read; store@S1(0); pure (v + 1) * 2 }",
      "instance concst\nstore int[-3..3]\nend critical\ndo { spawn do { pure 1 }; lock }",
  };
  for (const auto& src : sources) {
    auto p = parse_program(src);
    auto printed = print_program(p);
    CHECK(parse_program(printed) == p);
    CHECK(print_program(parse_program(printed)) == printed);
  }
}

TEST_CASE("glist programs respect their inferred length bound") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::string text = "instance glist\ndo {\n";
    std::int64_t bound = 1;
    int steps = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < steps; ++i) {
      int n = static_cast<int>(rng() % 4);
      bound *= n;
      text += "  x" + std::to_string(i) + " <- choose(";
      for (int k = 0; k < n; ++k) text += (k ? ", " : "") + std::to_string(k);
      text += ");\n";
    }
    text += "  pure x0\n}\n";
    auto r = run_program(parse_program(text));
    CHECK(r.type.index == Morphism::monoid_elem(star(), Value::integer(bound)));
    CHECK(static_cast<std::int64_t>(r.computation.payload.items().size()) == bound);
  }
}

TEST_CASE("typed state programs change their state set") {
  auto p = parse_program("instance tstate\nstates 3\ninit 2\nend S1\ndo { v <- read; store@S1(0); pure v }");
  auto r = run_program(p);
  CHECK(r.rendered == "result: 2\nstate: S3 2 -> S1 0");
  auto bad = parse_program("instance tstate\nstates 3\nend S1\ndo { store@S1(2) }");
  CHECK(code_of([&] { run_program(bad); }) == ErrorCode::RangeError);
}

TEST_CASE("two samples need a bound of 2/10") {
  auto v = ahl(kTwoSamples);
  CHECK(v.valid);
  REQUIRE(v.nodes.size() == 3);
  CHECK(v.nodes[0].failure == q("19/100"));
  CHECK(v.nodes[0].beta == q("1/5"));

  std::string tight = kTwoSamples;
  tight.replace(tight.rfind("2/10"), 4, "1/10");
  auto t = ahl(tight);
  CHECK_FALSE(t.valid);
  CHECK(t.error == ErrorCode::RuleMismatch);
}

TEST_CASE("a claimed bound below the exact failure is a violation") {
  auto v = ahl("var x : int[0..9]\nsample x uniform(0, 9) bound 1/20 pre true post x != 0");
  CHECK_FALSE(v.valid);
  CHECK(v.error == ErrorCode::BoundViolation);
}

TEST_CASE("weakening loosens bounds and strengthens conditions") {
  std::string body = kTwoSamples;
  for (const char* beta : {"2/10", "1/4", "1/2", "1"}) {
    auto text = "var x : int[0..9]\nvar y : int[0..9]\nweak {\n" +
                body.substr(body.find("seq")) + "} bound " + beta + " pre x == 3 post y != 0\n";
    auto v = ahl(text);
    CHECK_MESSAGE(v.valid, beta);
  }
  auto tighter = "var x : int[0..9]\nvar y : int[0..9]\nweak {\n" + body.substr(body.find("seq")) +
                 "} bound 1/10 pre true post y != 0\n";
  CHECK(ahl(tighter).error == ErrorCode::RuleMismatch);
  auto backwards = "var x : int[0..9]\nvar y : int[0..9]\nweak {\n" + body.substr(body.find("seq")) +
                   "} bound 1/2 pre true post x == 1\n";
  CHECK(ahl(backwards).error == ErrorCode::InvalidImplication);
}

TEST_CASE("sequenced bounds saturate at one") {
  auto v = ahl(R"(var x : int[0..9]
seq {
  sample x uniform(0, 9) bound 7/10 pre true post x >= 3;
  sample x uniform(0, 9) bound 5/10 pre x >= 3 post x >= 5
} bound 1 pre true post x >= 5
)");
  CHECK(v.valid);
  CHECK(v.nodes[0].beta == 1);
}

TEST_CASE("assignment and skip derive bound zero") {
  auto v = ahl(R"(var x : int[0..9]
seq {
  skip pre x <= 4;
  assign x := x + 1 pre x + 1 <= 5 post x <= 5
}
)");
  CHECK_FALSE(v.valid);
  CHECK(v.error == ErrorCode::RuleMismatch);
  auto ok = ahl(R"(var x : int[0..9]
seq {
  skip pre x + 1 <= 5;
  assign x := x + 1 post x <= 5
} bound 0 pre x + 1 <= 5 post x <= 5
)");
  CHECK(ok.valid);
  CHECK(ok.nodes[0].failure == 0);
}

TEST_CASE("structurally accepted derivations are semantically sound") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> posts = {"x != 0", "x >= 2", "x <= 6", "true", "x == 5"};
  int accepted = 0;
  for (int trial = 0; trial < 80; ++trial) {
    auto pick = [&] { return posts[rng() % posts.size()]; };
    int lo = static_cast<int>(rng() % 5), hi = lo + static_cast<int>(rng() % 5);
    auto post = pick();
    std::string beta = std::to_string(rng() % 11) + "/10";
    std::string text = "var x : int[0..9]\nweak {\n  sample x uniform(" + std::to_string(lo) + ", " +
                       std::to_string(hi) + ") bound " + beta + " pre true post " + post + "\n} bound 1 pre x == 0 post " +
                       pick() + "\n";
    auto v = ahl(text);
    if (!v.valid) continue;
    ++accepted;
    for (const auto& n : v.nodes) CHECK(n.failure <= n.beta);
  }
  CHECK(accepted > 0);
}

TEST_CASE("short rule forms parse like the keyword forms") {
  auto v = ahl(R"(var x : int[0..9]
var y : int[0..9]
seq {
  x <~ uniform(0, 9) bound 1/10 pre true post x != 0;
  y <~ uniform(0, 9) bound 1/10 pre x != 0 post x != 0 && y != 0;
  x := 1 post x == 1 && y != 0
}
)");
  CHECK_FALSE(v.valid);
  CHECK(v.error == ErrorCode::RuleMismatch);
  CHECK(code_of([] { parse_ahl("var x : int[0..9]\nz <~ uniform(0, 1) bound 0 pre true post true"); }) ==
        ErrorCode::ParseError);
}
