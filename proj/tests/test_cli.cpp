#include <doctest.h>

#include "cgm/cli.hpp"

using cgm::run_cli;

namespace {

std::string program(const std::string& name) { return std::string(CGM_PROGRAMS_DIR) + "/" + name; }

}  // namespace

TEST_CASE("laws exit zero on lawful instances and one on mutants") {
  CHECK(run_cli({"laws", "glist", "--samples", "200", "--seed", "7"}).exit_code == 0);
  auto broken = run_cli({"laws", "broken-glist"});
  CHECK(broken.exit_code == 1);
  CHECK(broken.out.find("FAIL associativity") != std::string::npos);
  CHECK(run_cli({"laws", "nosuch"}).exit_code == 2);
  CHECK(run_cli({"laws", "glist", "--samples", "0"}).exit_code == 2);
}

TEST_CASE("run prints the grade and maps errors to exit codes") {
  auto ok = run_cli({"run", program("lock.gp")});
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.rfind("grade: lock;get;put;unlock : free -> free\n", 0) == 0);
  for (const char* bad : {"get_before_lock.gp", "missing_unlock.gp", "bad_spawn.gp"}) {
    auto r = run_cli({"run", program(bad)});
    CHECK_MESSAGE(r.exit_code == 2, bad);
    CHECK(r.err.find(':') != std::string::npos);
  }
  CHECK(run_cli({"run", program("two_samples.ahl")}).exit_code == 3);
  CHECK(run_cli({"run", program("absent.gp")}).exit_code == 2);
}

TEST_CASE("ahl reports exact failure probabilities") {
  auto ok = run_cli({"ahl", program("two_samples.ahl"), "--format", "machine"});
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("node.0.failure=19/100\n") != std::string::npos);
  CHECK(run_cli({"ahl", program("two_samples_tight.ahl")}).exit_code == 1);
  CHECK(run_cli({"ahl", program("weakened.ahl")}).exit_code == 0);
  CHECK(run_cli({"ahl", program("saturated.ahl")}).exit_code == 0);
  CHECK(run_cli({"ahl", program("lock.gp")}).exit_code == 3);
}

TEST_CASE("roundtrip guards the state count") {
  CHECK(run_cli({"roundtrip", "--states", "2"}).exit_code == 0);
  CHECK(run_cli({"roundtrip", "--states", "9"}).exit_code == 2);
}

TEST_CASE("translate covers each route") {
  CHECK(run_cli({"translate", "monad", "catgraded", "maybe"}).exit_code == 0);
  CHECK(run_cli({"translate", "graded", "catgraded", "glist"}).exit_code == 0);
  CHECK(run_cli({"translate", "pograded", "2catgraded", "glist"}).exit_code == 0);
  CHECK(run_cli({"translate", "param", "catgraded", "tstate"}).exit_code == 0);
  CHECK(run_cli({"translate", "catgraded", "param", "tstate", "--states", "1"}).exit_code == 0);
  CHECK(run_cli({"translate", "discrete", "catgraded", "tstate"}).exit_code == 0);
  CHECK(run_cli({"translate", "catgraded", "discrete", "tstate"}).exit_code == 0);
  CHECK(run_cli({"translate", "graded", "catgraded", "broken-glist"}).exit_code == 1);
  CHECK(run_cli({"translate", "param", "monad", "tstate"}).exit_code == 2);
}

TEST_CASE("identical commands print identical bytes") {
  const std::vector<std::vector<std::string>> commands = {
      {"laws", "concst", "--seed", "3"},
      {"laws", "broken-ahl", "--format", "machine"},
      {"run", program("choices.gp")},
      {"ahl", program("weakened.ahl")},
      {"translate", "param", "catgraded", "tstate", "--seed", "9"},
  };
  for (const auto& c : commands) {
    auto a = run_cli(c), b = run_cli(c);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
  }
}
