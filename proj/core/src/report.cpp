#include "abset/report.hpp"

namespace abset {

Check make_check(std::string name, bool passed, Severity sev, std::string measured, std::string bound) {
  return Check{std::move(name), passed, sev, std::move(measured), std::move(bound)};
}

std::string exact_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

bool all_asserted_pass(const CheckList& checks) {
  for (const auto& c : checks) {
    if (c.severity == Severity::Asserted && !c.passed) return false;
  }
  return true;
}

std::vector<std::string> failed_assertions(const CheckList& checks) {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (c.severity == Severity::Asserted && !c.passed) out.push_back(c.name);
  }
  return out;
}

void append(CheckList& into, const CheckList& from, const std::string& prefix) {
  for (auto c : from) {
    if (!prefix.empty()) c.name = prefix + c.name;
    into.push_back(std::move(c));
  }
}

}  // namespace abset
