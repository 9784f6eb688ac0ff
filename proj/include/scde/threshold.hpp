#pragma once

#include <functional>
#include <vector>

#include "scde/de_system.hpp"

namespace scde {

struct RunOptions {
  // A run counts as converged once the worst position value drops below this.
  double delta_conv = 1e-10;
  int max_iters = 50000;
  // When set, called with the position-value profile every stream_every
  // iterations and once more on the final state.
  int stream_every = 0;
  std::function<void(int iteration, const std::vector<double>& profile)> observer;
};

struct DERunReport {
  bool converged = false;
  int iterations = 0;
  double max_residual = 0.0;
  double epsilon = 0.0;
  std::vector<double> final_profile;  // worst erasure per position
};

struct ThresholdOptions {
  double tol = 1e-5;
  RunOptions run;
  // Called after each probe run with the channel parameter and its verdict.
  std::function<void(double epsilon, bool feasible)> probe_observer;
};

struct ThresholdResult {
  double threshold = 0.0;
  double bracket_width = 0.0;
  int runs = 0;
};

// Iterate the system at fixed epsilon until convergence, an exact stall, or
// the iteration cap. A stalled or capped run is reported as not converged.
DERunReport run_de(const DeSystem& system, double epsilon, const RunOptions& opts = {});

// Largest channel parameter the system decodes, located by bisection on
// [0, 1]; the result is the midpoint of the final bracket.
ThresholdResult bp_threshold(const DeSystem& system, const ThresholdOptions& opts = {});

// Shared bisection driver: feasible(epsilon) must be monotone (true below
// the threshold).
ThresholdResult bisect_feasibility(
    const std::function<bool(double)>& feasible, double tol,
    const std::function<void(double, bool)>& probe_observer = nullptr);

}  // namespace scde
