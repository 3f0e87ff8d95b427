#pragma once

#include <optional>
#include <string>
#include <vector>

#include "helix/model.hpp"
#include "helix/numerics/grid.hpp"
#include "helix/numerics/quadrature.hpp"
#include "helix/quadratic.hpp"

namespace helix::cli {

enum class Scenario { trajectory, field, verify, propagate, corrections, spectrum };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& s);

/// Sample times: either an explicit list or `count` points spanning
/// [start, stop] inclusive.
struct TimeSamples {
  std::vector<double> values;
  struct Range {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    friend bool operator==(const Range&, const Range&) = default;
  };
  std::optional<Range> range;

  std::vector<double> expand() const;
  bool empty() const { return values.empty() && !range; }
  friend bool operator==(const TimeSamples&, const TimeSamples&) = default;
};

struct PropagateOptions {
  double t_final = 0.0;
  int steps = 2000;
  friend bool operator==(const PropagateOptions&, const PropagateOptions&) = default;
};

struct SpectrumOptions {
  Vec3 probe{0, 0, 0};
  double t_span = 0.0;
  int samples = 4096;
  friend bool operator==(const SpectrumOptions&, const SpectrumOptions&) = default;
};

struct VerifyOptions {
  /// Empty selects every check.
  std::vector<std::string> checks;
  friend bool operator==(const VerifyOptions&, const VerifyOptions&) = default;
};

/// How the physical parameters were specified; kept so that a config
/// serialises back to the form it was read from.
struct UnitSpec {
  bool si = false;
  double mass_kg = 0.0;
  double B_tesla = 0.0;
  friend bool operator==(const UnitSpec&, const UnitSpec&) = default;
};

struct RunConfig {
  Scenario scenario = Scenario::verify;
  UnitSpec units;
  WaveModel model;
  std::optional<numerics::Grid3> grid;
  std::optional<numerics::QuadratureSpec> quad;
  TimeSamples times;
  std::string output = "out";
  PropagateOptions propagate;
  SpectrumOptions spectrum;
  VerifyOptions verify;
  std::optional<QuadraticHamiltonian> hamiltonian;
  int threads = 1;
  double tolerance_scale = 1.0;

  /// Scenario-specific presence checks; throws ConfigError.
  void validate() const;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates a JSON config. Unknown keys, wrong types and missing
/// fields raise ConfigError carrying the line and column of the offending
/// value in `text`.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical JSON form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& c);

}  // namespace helix::cli
