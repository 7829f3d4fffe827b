#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cgm/error.hpp"
#include "cgm/report.hpp"

namespace cgm {

/// Names accepted by instance_laws.
std::vector<std::string> instance_names();
/// Runs every law suite that applies to the named instance. Throws
/// UnknownInstance for names outside instance_names().
LawReport instance_laws(const std::string& name, std::size_t samples, std::uint64_t seed);

/// typed_state over S1..Sn translated forward and back; n must be 1..3.
LawReport roundtrip_report(int states, std::size_t samples = 200, std::uint64_t seed = 0);

struct TranslationRoute {
  std::string from;
  std::string to;
  std::string instance;
  std::string description;
};

std::vector<TranslationRoute> translation_routes();
/// Applies one translation and checks the result. `states` sizes the
/// typed-state instances.
LawReport translate_report(const std::string& from, const std::string& to, const std::string& instance,
                           std::size_t samples, std::uint64_t seed, int states = 2);

/// 2 for grade and configuration errors, 3 for parse errors.
int exit_code_for(ErrorCode code);

}  // namespace cgm
