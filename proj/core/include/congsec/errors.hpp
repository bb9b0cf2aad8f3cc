#pragma once

#include <stdexcept>
#include <string>

namespace congsec {

// Error taxonomy shared across the library. CLI maps these onto exit codes:
// invalid_input/precondition -> 2, config problems -> 1, internal -> 3.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller handed us something that violates a documented precondition.
struct invalid_input : error {
    using error::error;
};

// A data structure fails its own invariants (bad cycle, bad forest, ...).
struct structural_error : error {
    using error::error;
};

// A message would exceed the per-round per-edge bit budget.
struct bandwidth_violation : error {
    using error::error;
};

// The random-delay scheduler ran out of retry attempts.
struct scheduling_failure : error {
    using error::error;
};

// A protocol step received malformed data (wrong lengths, bad frame).
struct protocol_error : error {
    using error::error;
};

// Internal invariant broke; indicates a bug, not bad input.
struct internal_error : error {
    using error::error;
};

} // namespace congsec
