#pragma once

#include <stdexcept>

namespace killword {

// Malformed input values: bad indices, dimension mismatches, invalid documents.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An operation was invoked outside its contract (wrong gate, wrong case).
struct precondition_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured cap was hit before the computation could finish.
struct cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace killword
