#include "cgm/registry.hpp"

#include <functional>
#include <map>

#include "cgm/ahl.hpp"
#include "cgm/core.hpp"
#include "cgm/instances.hpp"
#include "cgm/translations.hpp"

namespace cgm {

namespace {

using Suite = std::function<LawReport(std::size_t, std::uint64_t)>;

LawReport ahl_suites(bool forget_beta, std::size_t samples, std::uint64_t seed) {
  auto a = ahl_law_instance(forget_beta);
  LawReport r;
  r.subject = a.monad.base.name;
  r.merge(check_laws(a.monad, samples, seed));
  r.merge(check_laws(a.unit, samples, seed), "unit:");
  return r;
}

LawReport with_unit(const GeneralisedUnit& u, std::size_t samples, std::uint64_t seed) {
  LawReport r;
  r.subject = u.monad.name;
  r.merge(check_laws(u.monad, samples, seed));
  r.merge(check_laws(u, samples, seed), "unit:");
  return r;
}

LawReport tstate_suite(std::size_t samples, std::uint64_t seed) {
  return with_unit(param_to_catgraded_genunit(typed_state_param(3)), samples, seed);
}

LawReport tstate_end_suite(std::size_t samples, std::uint64_t seed) {
  auto m = z2_index(true);
  auto g = end_graded_from_param(typed_state(binary_states(m)), m);
  LawReport r;
  r.subject = "tstate-end";
  r.merge(check_graded_laws(g, samples, seed));
  r.merge(check_graded_laws_exhaustive(g), "exhaustive:");
  return r;
}

const std::map<std::string, Suite>& suites() {
  static const std::map<std::string, Suite> table = {
      {"identity", [](auto n, auto s) { return check_laws(identity_instance(lock_category()), n, s); }},
      {"glist", [](auto n, auto s) { return check_laws(graded_list_instance(4), n, s); }},
      {"broken-glist", [](auto n, auto s) { return check_laws(broken_graded_list_instance(4), n, s); }},
      {"glist-reverse", [](auto n, auto s) { return check_laws(list_reverse_homomorphism(4), n, s); }},
      {"list", [](auto n, auto s) { return check_monad_laws(list_monad(), n, s); }},
      {"maybe", [](auto n, auto s) { return check_monad_laws(maybe_monad(), n, s); }},
      {"concst", [](auto n, auto s) { return check_laws(concst_instance().monad, n, s); }},
      {"tstate", tstate_suite},
      {"tstate-end", tstate_end_suite},
      {"ahl", [](auto n, auto s) { return ahl_suites(false, n, s); }},
      {"broken-ahl", [](auto n, auto s) { return ahl_suites(true, n, s); }},
  };
  return table;
}

ParameterisedMonad tstate(const std::string& instance, int states, bool discrete) {
  if (instance != "tstate") throw Error(ErrorCode::UnknownInstance, "this translation applies to tstate, not " + instance);
  if (states < 1 || states > 3) throw Error(ErrorCode::RangeError, "state sets are limited to sizes 1..3");
  return discrete ? typed_state_discrete(states) : typed_state_param(states);
}

PlainMonad plain(const std::string& instance) {
  if (instance == "list") return list_monad();
  if (instance == "maybe") return maybe_monad();
  throw Error(ErrorCode::UnknownInstance, "no plain monad named " + instance);
}

GradedMonad graded(const std::string& instance) {
  if (instance == "glist") return graded_list(4);
  if (instance == "broken-glist") return broken_graded_list(4);
  throw Error(ErrorCode::UnknownInstance, "no graded monad named " + instance);
}

}  // namespace

std::vector<std::string> instance_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : suites()) out.push_back(name);
  return out;
}

LawReport instance_laws(const std::string& name, std::size_t samples, std::uint64_t seed) {
  auto it = suites().find(name);
  if (it == suites().end()) throw Error(ErrorCode::UnknownInstance, "no instance named " + name);
  if (samples == 0) throw Error(ErrorCode::RangeError, "samples must be at least 1");
  auto r = it->second(samples, seed);
  r.subject = name;
  return r;
}

LawReport roundtrip_report(int states, std::size_t samples, std::uint64_t seed) {
  auto p = tstate("tstate", states, false);
  LawReport r;
  r.subject = "tstate S1..S" + std::to_string(states);
  r.merge(roundtrip_param(p, samples, seed));
  r.merge(check_dinaturality(p, 2000, seed), "dinaturality:");
  r.merge(roundtrip_discrete_param(typed_state_discrete(states)), "discrete:");
  return r;
}

std::vector<TranslationRoute> translation_routes() {
  return {
      {"monad", "catgraded", "list|maybe", "a monad graded by the terminal category"},
      {"graded", "catgraded", "glist", "a monoid-graded monad graded by its one-object category"},
      {"pograded", "2catgraded", "glist", "an ordered graded monad with its order as 2-cells"},
      {"param", "catgraded", "tstate", "typed state over the pair completion, with generalised unit"},
      {"catgraded", "param", "tstate", "forward then back, compared with the original"},
      {"discrete", "catgraded", "tstate", "identity-only typed state over the indiscrete category"},
      {"catgraded", "discrete", "tstate", "forward then back for the identity-only case"},
      {"param", "graded", "tstate", "the end over the two-element monoid"},
  };
}

LawReport translate_report(const std::string& from, const std::string& to, const std::string& instance,
                           std::size_t samples, std::uint64_t seed, int states) {
  if (samples == 0) throw Error(ErrorCode::RangeError, "samples must be at least 1");
  LawReport r;
  if (from == "monad" && to == "catgraded") {
    r = check_laws(monad_to_catgraded(plain(instance)), samples, seed);
  } else if (from == "graded" && to == "catgraded") {
    r = check_laws(graded_to_catgraded(graded(instance)), samples, seed);
  } else if (from == "pograded" && to == "2catgraded") {
    r = check_laws(pograded_to_2catgraded(graded(instance)), samples, seed);
  } else if (from == "param" && to == "catgraded") {
    r = with_unit(param_to_catgraded_genunit(tstate(instance, states, false)), samples, seed);
  } else if (from == "catgraded" && to == "param") {
    r = roundtrip_param(tstate(instance, states, false), samples, seed);
  } else if (from == "discrete" && to == "catgraded") {
    r = check_laws(discrete_param_to_catgraded(tstate(instance, states, true)), samples, seed);
  } else if (from == "catgraded" && to == "discrete") {
    r = roundtrip_discrete_param(tstate(instance, states, true));
  } else if (from == "param" && to == "graded") {
    if (instance != "tstate") throw Error(ErrorCode::UnknownInstance, "the end applies to tstate, not " + instance);
    r = tstate_end_suite(samples, seed);
  } else {
    throw Error(ErrorCode::UnknownInstance, "no translation from " + from + " to " + to);
  }
  r.subject = from + " -> " + to + " (" + instance + ")";
  return r;
}

int exit_code_for(ErrorCode code) { return code == ErrorCode::ParseError ? 3 : 2; }

}  // namespace cgm
