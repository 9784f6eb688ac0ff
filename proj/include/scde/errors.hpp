#pragma once

#include <stdexcept>

namespace scde {

// Numerical breakdown inside an iteration (non-finite state). Distinct from
// invalid_argument so callers can map it to a different exit status.
struct ComputationFault : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised by the wave-speed estimator when no traveling wave can be observed:
// either the whole chain collapses before a front forms (epsilon too small)
// or the front never moves (epsilon at or above threshold).
struct NoWaveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace scde
