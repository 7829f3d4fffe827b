#pragma once

#include <string>
#include <vector>

namespace cgm {

struct CliResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs one `cgm` command line (without the program name) and captures what
/// it would print. Exit codes: 0 ok, 1 law or verification failure, 2 grade
/// or configuration error, 3 parse error.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace cgm
