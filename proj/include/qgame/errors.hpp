#pragma once

#include <stdexcept>
#include <string>

namespace qgame {

// Shape mismatch or a dimension beyond kMaxDim.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value violates a domain constraint (parameter range, payoff ordering,
// unitarity, density-matrix validity).
class ConstraintError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Floating-point results that should be real/normalized but are not.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive search would exceed the configured evaluation budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Configuration could not be parsed or validated. `field` is the dotted path
// of the offending entry, e.g. "parameters.grid.theta".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace qgame
