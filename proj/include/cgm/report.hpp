#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace cgm {

/// One failed law instantiation with its full witness.
struct LawFailure {
  std::string law;
  std::vector<std::string> indices;
  std::string input;
  std::string lhs;
  std::string rhs;

  bool operator==(const LawFailure&) const = default;
};

struct LawReport {
  std::string subject;
  std::size_t checks_run = 0;
  std::size_t skipped = 0;
  std::map<std::string, std::size_t> checked;
  std::map<std::string, std::size_t> failed;
  std::vector<LawFailure> failures;

  bool ok() const { return failures.empty(); }

  void pass(const std::string& law, std::size_t count = 1);
  void fail(LawFailure failure);
  void skip(const std::string& law);
  /// Fold another report in, prefixing its law names.
  void merge(const LawReport& other, const std::string& prefix = "");

  /// Human-readable report; byte-identical for identical inputs.
  std::string to_text() const;
  /// Flat key=value summary with stable key names.
  std::string to_machine() const;
};

}  // namespace cgm
