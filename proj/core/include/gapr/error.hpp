#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gapr {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance document (bad JSON, wrong types, unknown fields).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// One broken invariant of an instance. Violations are data, not failures.
struct Violation {
  std::string entity;  // offending entity id, e.g. "arc (O,A)" or "od1"
  std::string rule;    // short rule name, e.g. "dangling-reference"
  std::string message;

  bool operator==(const Violation&) const = default;
};

/// Raised by loaders when an instance parses but fails validation.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Bad generator or sweep configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Destination unreachable from origin.
class NoPathError : public Error {
 public:
  using Error::Error;
};

/// An OD pair has an empty eligible path set.
class NoEligiblePathsError : public Error {
 public:
  using Error::Error;
};

/// The simplex hit its iteration cap. Never returned as a solution.
class IterationLimitError : public Error {
 public:
  using Error::Error;
};

/// Solver outcome that cannot happen for valid input (e.g. an infeasible
/// routing LP). Signals an internal defect.
class SolveError : public Error {
 public:
  using Error::Error;
};

/// Two objects that must describe the same instance do not.
class MismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace gapr
