#pragma once

#include <stdexcept>
#include <string>

namespace bsq {

// Rejected input: a precondition of an operation was not met.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or inconsistent run configuration. `field` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Step rejected because dt exceeds the advective CFL limit.
class CflViolation : public std::runtime_error {
 public:
  CflViolation(double dt, double suggested_dt)
      : std::runtime_error("CFL violation: dt=" + std::to_string(dt) +
                           ", suggested dt=" + std::to_string(suggested_dt)),
        suggested_dt_(suggested_dt) {}
  double suggested_dt() const { return suggested_dt_; }

 private:
  double suggested_dt_;
};

// Non-finite values appeared in the solution.
class NumericalBlowup : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bsq
