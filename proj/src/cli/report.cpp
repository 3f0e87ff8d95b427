#include "helix/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace helix::cli {

CheckRecord judge(CheckRecord r) {
  if (std::isnan(r.measured)) r.passed = false;
  else if (r.comparison == ">=") r.passed = r.measured >= r.tolerance;
  else r.passed = r.measured <= r.tolerance;
  return r;
}

void VerificationReport::add(CheckRecord r) {
  for (const auto& c : checks)
    if (c.name == r.name) throw std::logic_error("duplicate check '" + r.name + "'");
  checks.push_back(std::move(r));
}

bool VerificationReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& c : checks)
    a.push_back({{"name", c.name},
                 {"reference", c.reference},
                 {"measured", c.measured},
                 {"tolerance", c.tolerance},
                 {"comparison", c.comparison},
                 {"passed", c.passed},
                 {"runtime_s", c.runtime_s},
                 {"detail", c.detail}});
  return {{"passed", passed()}, {"checks", a}};
}

void VerificationReport::print_table(std::ostream& os) const {
  char line[256];
  std::snprintf(line, sizeof line, "%-26s %-6s %13s %2s %-11s %8s\n", "check", "status", "measured",
                "", "tolerance", "time[s]");
  os << line;
  for (const auto& c : checks) {
    std::snprintf(line, sizeof line, "%-26s %-6s %13.4e %2s %-11.3e %8.2f\n", c.name.c_str(),
                  c.passed ? "PASS" : "FAIL", c.measured, c.comparison.c_str(), c.tolerance, c.runtime_s);
    os << line;
    if (!c.detail.empty()) os << "    " << c.detail << "\n";
  }
  os << (passed() ? "overall: PASS\n" : "overall: FAIL\n");
}

}  // namespace helix::cli
