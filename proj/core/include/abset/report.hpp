#pragma once

// Named pass/fail records that every verification routine emits. Asserted
// checks decide the exit status of a run; reported ones are informational.

#include "abset/numeric.hpp"

#include <string>
#include <vector>

namespace abset {

enum class Severity { Asserted, Reported };

struct Check {
  std::string name;
  bool passed = false;
  Severity severity = Severity::Asserted;
  std::string measured;  // decimal or exact rendering of the measured quantity
  std::string bound;     // what it was compared against, if anything
};

using CheckList = std::vector<Check>;

Check make_check(std::string name, bool passed, Severity sev = Severity::Asserted, std::string measured = {},
                 std::string bound = {});

// Renders q as "p/q" (or "p" for integers).
std::string exact_string(const Rational& q);

bool all_asserted_pass(const CheckList& checks);
// Names of asserted checks that failed.
std::vector<std::string> failed_assertions(const CheckList& checks);

void append(CheckList& into, const CheckList& from, const std::string& prefix = {});

}  // namespace abset
