#pragma once

#include <stdexcept>
#include <string>

namespace cmof {

// Data or runtime failure (bad file, bad label, mismatched inputs).
// The CLI maps this to exit code 1.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid configuration or usage. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cmof
