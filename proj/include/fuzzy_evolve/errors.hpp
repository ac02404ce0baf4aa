#pragma once

#include <stdexcept>
#include <string>

namespace fuzzy_evolve {

// Invalid value handed to a scale, interval or model operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A scenario (or CLI flag) that does not describe a runnable experiment.
// `field` names the offending key, e.g. "initial_opinions[3]".
class ScenarioError : public std::invalid_argument {
 public:
  ScenarioError(std::string field, const std::string& message)
      : std::invalid_argument(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Reading or writing a file failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fuzzy_evolve
