#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fdrs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A series, continued fraction or quadrature did not reach tolerance.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Parameters outside the region an algorithm has been validated for.
class UnsupportedParameters : public Error {
 public:
  using Error::Error;
};

/// One or more configuration requirements are violated. `what()` joins them.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
      if (!out.empty()) out += "; ";
      out += s;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

}  // namespace fdrs
