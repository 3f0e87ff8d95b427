#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace helix::cli {

/// One verification check. `comparison` is "<=" when measured must not
/// exceed tolerance and ">=" when it must reach it.
struct CheckRecord {
  std::string name;
  std::string reference;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string comparison = "<=";
  bool passed = false;
  double runtime_s = 0.0;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckRecord> checks;

  /// Adds a record; throws std::logic_error on a duplicate name.
  void add(CheckRecord r);
  bool passed() const;
  nlohmann::json to_json() const;
  void print_table(std::ostream& os) const;
};

/// Fills `passed` from measured, tolerance and comparison (NaN fails).
CheckRecord judge(CheckRecord r);

}  // namespace helix::cli
