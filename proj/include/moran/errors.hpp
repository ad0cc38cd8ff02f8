#pragma once

#include <stdexcept>

namespace moran {

// Thrown when a simulation run exceeds its configured event budget.
// Callers that launch many runs (sweeps) catch this per cell and keep going.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when the coupled neutral shadow process violates Y_i <= X_i.
// This invariant is forced by the shared-stream construction, so a
// violation always means a bug in the engine, never model behavior.
struct DominationViolation : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace moran
