#pragma once

#include <stdexcept>
#include <string>

namespace quilt {

// Malformed or out-of-range instance input (CLI exit code 2).
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A brute-force search would exceed its configured cap (CLI exit code 3).
struct InstanceTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A budgeted computation ran out of steps before producing the requested
// result (CLI exit code 4). Signals "not yet known", never "impossible".
struct BudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace quilt
