#pragma once

#include <stdexcept>
#include <string>

namespace oscillax {

// Invalid input or scenario configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A quadrature could not reach its tolerance within budget.
struct QuadratureError : std::runtime_error {
  double partial = 0;
  QuadratureError(const std::string& what, double partial_value = 0)
      : std::runtime_error(what), partial(partial_value) {}
};

}  // namespace oscillax
