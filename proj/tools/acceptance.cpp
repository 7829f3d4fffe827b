// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "cgm/cli.hpp"
#include "cgm/error.hpp"
#include "cgm/instances.hpp"
#include "cgm/metalang.hpp"
#include "cgm/registry.hpp"
#include "cgm/translations.hpp"

using namespace cgm;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note << " [" << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool has_witness(const LawReport& r) {
  for (const auto& f : r.failures)
    if (!f.input.empty() && f.lhs != f.rhs) return true;
  return false;
}

void law_suites(Outcome& o) {
  for (const char* name : {"identity", "glist", "concst", "tstate", "ahl"}) {
    auto t0 = std::chrono::steady_clock::now();
    auto r = instance_laws(name, 200, 0);
    auto dt = seconds_since(t0);
    o.require(r.ok(), std::string(name) + " has failures");
    o.require(dt < 10.0, std::string(name) + " took over 10 s");
    o.note << " " << name << "=" << r.checks_run;
  }
  for (const char* name : {"broken-glist", "broken-ahl"}) {
    auto r = instance_laws(name, 200, 0);
    o.require(!r.ok() && has_witness(r), std::string(name) + " was not caught");
    o.note << " " << name << ":" << r.failures.size() << " failures";
  }
}

void list_bound(Outcome& o) {
  auto r = check_list_bound_exhaustive(graded_list(4), 4, {Value::str("a"), Value::str("b")});
  o.require(r.ok(), "violations found");
  o.require(r.checked.count("length-bound") && r.checked.count("approx-mult"), "nothing checked");
  if (r.ok()) o.note << " length-bound=" << r.checked.at("length-bound") << " approx-mult=" << r.checked.at("approx-mult");
}

std::string lock_sequence(const std::vector<std::string>& prims) {
  std::string text = "instance concst\ndo {\n";
  for (const auto& p : prims) text += "  " + (p == "put" ? std::string("put(1)") : p) + ";\n";
  return text + "  pure 0\n}\n";
}

bool reference_lock_dfa(const std::vector<std::string>& prims) {
  bool held = false;
  for (const auto& p : prims) {
    if (p == "lock") {
      if (held) return false;
      held = true;
    } else if (!held) {
      return false;
    } else if (p == "unlock") {
      held = false;
    }
  }
  return !held;
}

int program_exit(const std::string& text) {
  try {
    run_program(parse_program(text));
    return 0;
  } catch (const Error& e) {
    return exit_code_for(e.code());
  }
}

void lock_protocol(Outcome& o) {
  auto r = run_program(parse_program("instance concst\ndo {\n  lock;\n  x <- get;\n  put(x + 1);\n  unlock\n}\n"));
  o.require(r.type.index.describe() == "lock;get;put;unlock : free -> free", "program grade");
  o.require(program_exit("instance concst\ndo {\n  x <- get;\n  lock;\n  unlock;\n  pure x\n}\n") == 2, "get before lock");
  o.require(program_exit("instance concst\ndo {\n  lock;\n  put(3)\n}\n") == 2, "missing unlock");
  o.require(program_exit("instance concst\ndo {\n  spawn do { lock; put(1) };\n  pure 0\n}\n") == 2, "bad spawn");

  const std::vector<std::string> alphabet = {"lock", "unlock", "get", "put"};
  std::vector<std::vector<std::string>> level = {{}};
  std::size_t total = 0, discrepancies = 0;
  for (int len = 0; len <= 5; ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto& s : level) {
      bool accepted = program_exit(lock_sequence(s)) == 0;
      discrepancies += accepted != reference_lock_dfa(s);
      ++total;
      for (const auto& a : alphabet) {
        next.push_back(s);
        next.back().push_back(a);
      }
    }
    level = std::move(next);
  }
  o.require(discrepancies == 0, std::to_string(discrepancies) + " DFA discrepancies");
  o.note << " sequences=" << total << " discrepancies=" << discrepancies;
}

void round_trip(Outcome& o) {
  for (int n = 1; n <= 3; ++n) {
    auto r = roundtrip_param(typed_state_param(n));
    o.require(r.ok(), "S1..S" + std::to_string(n) + " mismatches");
    for (const char* law : {"morph", "bifunctor-identity", "bifunctor-composition", "geneta-definitions"}) {
      o.require(r.checked.count(law) > 0, std::string(law) + " unchecked at " + std::to_string(n));
    }
    o.note << " n=" << n << ":" << r.checks_run;
  }
}

// Exact Pr[x == 0 or y == 0] for two independent uniform draws from 0..9.
Rational two_sample_oracle() {
  int bad = 0;
  for (int x = 0; x <= 9; ++x)
    for (int y = 0; y <= 9; ++y) bad += x == 0 || y == 0;
  return Rational(bad, 100);
}

void ahl_checker(Outcome& o) {
  const std::string vars = "var x : int[0..9]\nvar y : int[0..9]\n";
  const std::string seq =
      "seq {\n  x <~ uniform(0, 9) bound 1/10 pre true post x != 0;\n"
      "  y <~ uniform(0, 9) bound 1/10 pre x != 0 post x != 0 && y != 0\n}";
  auto check = [](const std::string& text) { return check_ahl(parse_ahl(text)); };

  auto at_2 = check(vars + seq + " bound 2/10 pre true post x != 0 && y != 0\n");
  o.require(at_2.valid, "bound 2/10 rejected");
  o.require(!at_2.nodes.empty() && at_2.nodes[0].failure == two_sample_oracle(), "failure probability");
  if (!at_2.nodes.empty()) o.note << " Pr=" << rational_to_string(at_2.nodes[0].failure);
  o.require(!check(vars + seq + " bound 1/10 pre true post x != 0 && y != 0\n").valid, "bound 1/10 accepted");
  for (const char* beta : {"2/10", "1/4", "3/10", "1/2", "1"}) {
    auto v = check(vars + "weak {\n" + seq + "\n} bound " + beta + " pre x == 3 && y == 1 post y != 0\n");
    o.require(v.valid, std::string("weak to ") + beta + " rejected");
  }
  o.require(!check(vars + "weak {\n" + seq + "\n} bound 19/100 pre true post y != 0\n").valid, "weak below 2/10");
  auto sat = check(
      "var x : int[0..9]\nseq {\n  x <~ uniform(0, 9) bound 7/10 pre true post x >= 3;\n"
      "  x <~ uniform(0, 9) bound 5/10 pre x >= 3 post x >= 5\n} bound 1 pre true post x >= 5\n");
  o.require(sat.valid, "saturated bound 1 rejected");
}

void dinaturality(Outcome& o) {
  for (int n = 1; n <= 3; ++n) {
    auto d = check_dinaturality(typed_state_param(n));
    o.require(d.ok(), "squares fail at " + std::to_string(n));
    o.require(d.checked.count("eta-dinatural") && d.checked.count("mu-dinatural"), "squares unchecked");
    auto discrete = roundtrip_discrete_param(typed_state_discrete(n));
    o.require(discrete.ok(), "discrete round trip at " + std::to_string(n));
    o.note << " n=" << n << ":" << d.checks_run << "+" << discrete.checks_run;
  }
}

void end_construction(Outcome& o) {
  auto swaps = z2_index(true);
  auto g = end_graded_from_param(typed_state(binary_states(swaps)), swaps);
  auto laws = check_graded_laws_exhaustive(g);
  o.require(laws.ok() && laws.checked.count("associativity"), "end laws");
  o.note << " end-laws=" << laws.checks_run;

  auto plain = z2_index(false);
  auto p = typed_state(binary_states(plain));
  for (const auto& f : plain.category.objects()) {
    o.require(end_elements(p, plain, f, p.leaves) == end_product(p, plain, f, p.leaves), "discrete end is not the product");
  }
}

void determinism(Outcome& o) {
  std::vector<std::vector<std::string>> commands;
  for (const auto& name : instance_names()) commands.push_back({"laws", name, "--seed", "5", "--format", "machine"});
  commands.push_back({"translate", "param", "catgraded", "tstate", "--seed", "3"});
  commands.push_back({"roundtrip", "--states", "2"});
  for (const auto& c : commands) {
    auto a = run_cli(c), b = run_cli(c);
    o.require(a.exit_code == b.exit_code && a.out == b.out && a.err == b.err, c[0] + " " + c[1]);
  }
  auto program = parse_program("instance glist\ndo { x <- choose(1, 2); y <- choose(x, 3); pure (x, y) }");
  o.require(run_program(program).rendered == run_program(program).rendered, "run");
  o.note << " commands=" << commands.size() + 1;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"law suites", law_suites},
      {"graded list bound", list_bound},
      {"lock protocol", lock_protocol},
      {"parameterised round trip", round_trip},
      {"aHL verification", ahl_checker},
      {"dinaturality", dinaturality},
      {"end construction", end_construction},
      {"determinism", determinism},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.note << " [error: " << e.what() << "]";
    }
    all = all && o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ":" << o.note.str() << " ("
              << static_cast<int>(seconds_since(t0) * 1000) << " ms)" << std::endl;
  }
  return all ? 0 : 1;
}
