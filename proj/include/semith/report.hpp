#pragma once

#include <map>
#include <string>
#include <vector>

namespace semith {

// Outcome of a verification sweep. Failures are report content, not
// exceptions; "inconclusive" counts cases whose witness may lie outside
// the configured bounds.
struct CheckReport {
  std::string check;
  std::map<std::string, std::string> bounds;
  long long cases = 0;
  long long inconclusive = 0;
  std::vector<std::string> counterexamples;
  std::string note;

  std::string verdict() const;
  bool passed() const { return verdict() == "pass"; }

  std::string to_text() const;
  std::string to_json_line() const;
};

// fail > inconclusive > pass
int exit_code(const std::vector<CheckReport>& reports);

}  // namespace semith
