#pragma once

#include <stdexcept>

namespace wigner {

/// Thrown when a computation would exceed its configured work budget.
/// Budgets are never silently truncated.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wigner
