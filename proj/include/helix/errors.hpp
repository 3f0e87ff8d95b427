#pragma once

#include <stdexcept>
#include <string>

namespace helix {

/// Precondition violated by an argument (negative mass, l < 0, bad grid...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure could not reach its advertised accuracy
/// (boundary decay, aliasing, non-convergent quadrature).
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested work exceeds a hard limit (e.g. RK4 step count).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or command-line usage. Line and column are 1-based
/// positions in the offending file, or 0 when unknown.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& msg, int line = 0, int column = 0)
      : std::invalid_argument(msg), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace helix
