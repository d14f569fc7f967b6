#pragma once

#include <stdexcept>

namespace crocker {

// Caller handed us something outside a documented precondition.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Filesystem-level failure (missing input, unwritable output).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace crocker
