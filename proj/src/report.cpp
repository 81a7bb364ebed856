#include "semith/report.hpp"

#include <sstream>

#include "json.hpp"

namespace semith {

std::string CheckReport::verdict() const {
  if (!counterexamples.empty()) return "fail";
  if (inconclusive > 0) return "inconclusive";
  return "pass";
}

std::string CheckReport::to_text() const {
  std::ostringstream os;
  os << "check " << check << ": " << verdict() << "\n";
  os << "  cases: " << cases << "\n";
  if (inconclusive > 0) os << "  inconclusive (bound): " << inconclusive << "\n";
  if (!bounds.empty()) {
    os << "  bounds:";
    for (const auto& [k, v] : bounds) os << " " << k << "=" << v;
    os << "\n";
  }
  const std::size_t shown = counterexamples.size() > 10 ? 10 : counterexamples.size();
  for (std::size_t i = 0; i < shown; ++i)
    os << "  counterexample: " << counterexamples[i] << "\n";
  if (counterexamples.size() > shown)
    os << "  ... " << (counterexamples.size() - shown) << " more\n";
  if (!note.empty()) os << "  note: " << note << "\n";
  return os.str();
}

std::string CheckReport::to_json_line() const {
  nlohmann::json j;
  j["check"] = check;
  j["bounds"] = bounds;
  j["cases"] = cases;
  j["inconclusive"] = inconclusive;
  j["verdict"] = verdict();
  j["counterexamples"] = counterexamples;
  if (!note.empty()) j["note"] = note;
  return j.dump();
}

int exit_code(const std::vector<CheckReport>& reports) {
  bool inconclusive = false;
  for (const auto& r : reports) {
    if (r.verdict() == "fail") return 1;
    if (r.verdict() == "inconclusive") inconclusive = true;
  }
  return inconclusive ? 2 : 0;
}

}  // namespace semith
