#pragma once

#include <stdexcept>

namespace wab {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct division_by_zero : std::runtime_error {
  division_by_zero() : std::runtime_error("division by zero") {}
};

/// Out-of-window access, or a window too small to generate any constraint.
struct window_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A family spec instantiated against parameters it is not defined for.
struct family_mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wab
