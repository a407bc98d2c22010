#pragma once

#include <stdexcept>
#include <string>

namespace sexalloc {

// Bad user input: malformed files, infeasible counts, invalid flags.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure: degenerate chains, non-convergent quadrature.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sexalloc
