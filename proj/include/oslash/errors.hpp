#pragma once
#include <stdexcept>

namespace oslash {

// Thrown on bad user input or config; the CLI maps it to exit code 1.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when an internal assumption breaks (overflow, uncertified data,
// contradicted postcondition); the CLI maps it to exit code 2.
struct invariant_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace oslash
