#pragma once

#include <stdexcept>
#include <string>

namespace rlab {

// Invalid model parameters (bad n, tau <= 0, missing gamma, ...).
struct InvalidParams : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Invalid call arguments (dimension mismatch, guard violations, ...).
struct InvalidArgs : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Numerical failure (non-finite input, eigensolver breakdown).
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rlab
