#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "scde/de_system.hpp"

namespace scde {

struct SpeedOptions {
  // Positions the decoding front must cover during the timed phase.
  int displacement = 10;
  // Frontier advance required before timing starts; -1 means coupling
  // width + 5.
  int burn_in_advance = -1;
  // Extra iterations after the advance is reached, to probe sensitivity to
  // the burn-in choice.
  int settle_iters = 0;
  double delta_conv = 1e-10;
  // Cap applied to the burn-in phase and to the timed phase separately.
  int max_iters = 50000;
};

struct SpeedEstimate {
  double speed = 0.0;  // displacement / iterations, positions per iteration
  int displacement = 0;
  int iterations = 0;  // timed iterations needed to cover the displacement
  int burn_in = 0;     // iterations consumed before timing started
};

// Measure how fast the decoding front moves at fixed epsilon: after a
// burn-in, count iterations until the whole half-chain profile fits under
// the reference profile shifted by `displacement` positions (left half
// shifted right, right half shifted left; the faster side wins). Throws
// NoWaveError when no moving front exists at this epsilon.
SpeedEstimate estimate_speed(const DeSystem& system, double epsilon,
                             const SpeedOptions& opts = {});

struct SpeedGridEntry {
  double param = 0.0;
  double epsilon = 0.0;
  double speed = 0.0;
  bool has_wave = false;
};

// Speed over a (param, epsilon) grid for a family of systems. Rows come back
// param-major in grid order regardless of worker count; grid points without
// a wave are marked rather than dropped. The factory must be safe to call
// from several threads.
std::vector<SpeedGridEntry> speed_contours(
    const std::function<std::unique_ptr<DeSystem>(double param)>& make_system,
    const std::vector<double>& params, const std::vector<double>& epsilons,
    const SpeedOptions& opts = {}, int workers = 0);

}  // namespace scde
