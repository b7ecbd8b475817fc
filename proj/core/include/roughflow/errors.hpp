#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace roughflow {

// Bad or inconsistent experiment configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  std::vector<std::string> keys;
  explicit ConfigError(const std::string& msg, std::vector<std::string> bad_keys = {})
      : std::runtime_error(msg), keys(std::move(bad_keys)) {}
};

// Non-finite values, failed solves and the like (CLI exit code 3).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Query outside a geometric domain (cone charts etc.).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace roughflow
