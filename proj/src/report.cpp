#include "cgm/report.hpp"

#include <algorithm>
#include <sstream>

namespace cgm {

void LawReport::pass(const std::string& law, std::size_t count) {
  checks_run += count;
  checked[law] += count;
  failed.try_emplace(law, 0);
}

void LawReport::fail(LawFailure failure) {
  ++checks_run;
  ++checked[failure.law];
  ++failed[failure.law];
  failures.push_back(std::move(failure));
}

void LawReport::skip(const std::string& law) {
  ++skipped;
  checked.try_emplace(law, 0);
  failed.try_emplace(law, 0);
}

void LawReport::merge(const LawReport& other, const std::string& prefix) {
  checks_run += other.checks_run;
  skipped += other.skipped;
  for (const auto& [law, n] : other.checked) checked[prefix + law] += n;
  for (const auto& [law, n] : other.failed) failed[prefix + law] += n;
  for (auto f : other.failures) {
    f.law = prefix + f.law;
    failures.push_back(std::move(f));
  }
}

namespace {

std::vector<LawFailure> ordered(const std::vector<LawFailure>& failures) {
  std::vector<LawFailure> out = failures;
  std::stable_sort(out.begin(), out.end(),
                   [](const LawFailure& a, const LawFailure& b) { return a.law < b.law; });
  return out;
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += " | ";
    out += xs[i];
  }
  return out;
}

}  // namespace

std::string LawReport::to_text() const {
  std::ostringstream os;
  os << "report: " << subject << '\n';
  os << "checks: " << checks_run << '\n';
  os << "skipped: " << skipped << '\n';
  os << "failures: " << failures.size() << '\n';
  for (const auto& [law, n] : checked) {
    auto it = failed.find(law);
    std::size_t bad = it == failed.end() ? 0 : it->second;
    os << "  " << law << ": " << n << " checked, " << bad << " failed\n";
  }
  std::size_t index = 0;
  for (const auto& f : ordered(failures)) {
    os << "FAIL " << f.law << " #" << index++ << '\n';
    os << "  indices: " << join(f.indices) << '\n';
    os << "  input: " << f.input << '\n';
    os << "  lhs: " << f.lhs << '\n';
    os << "  rhs: " << f.rhs << '\n';
  }
  os << "result: " << (ok() ? "PASS" : "FAIL") << '\n';
  return os.str();
}

std::string LawReport::to_machine() const {
  std::ostringstream os;
  os << "subject=" << subject << '\n';
  os << "checks=" << checks_run << '\n';
  os << "skipped=" << skipped << '\n';
  os << "failures=" << failures.size() << '\n';
  for (const auto& [law, n] : checked) {
    auto it = failed.find(law);
    os << "law." << law << ".checked=" << n << '\n';
    os << "law." << law << ".failed=" << (it == failed.end() ? 0 : it->second) << '\n';
  }
  std::size_t index = 0;
  for (const auto& f : ordered(failures)) {
    os << "failure." << index << ".law=" << f.law << '\n';
    os << "failure." << index << ".indices=" << join(f.indices) << '\n';
    os << "failure." << index << ".input=" << f.input << '\n';
    os << "failure." << index << ".lhs=" << f.lhs << '\n';
    os << "failure." << index << ".rhs=" << f.rhs << '\n';
    ++index;
  }
  os << "status=" << (ok() ? "pass" : "fail") << '\n';
  return os.str();
}

}  // namespace cgm
