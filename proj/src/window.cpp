#include "scde/window.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scde/errors.hpp"

namespace scde {

DERunReport windowed_decode(const DeSystem& system, double epsilon, const WindowConfig& cfg,
                            const RunOptions& opts) {
  const int L = system.chain_length();
  if (cfg.window_size < 1 || cfg.window_size > L) {
    throw std::invalid_argument("window size must lie in [1, L]");
  }
  if (cfg.iterations < 1) throw std::invalid_argument("window iteration count must be >= 1");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("channel parameter must lie in [0,1]");
  }
  if (!(opts.delta_conv > 0.0)) throw std::invalid_argument("convergence cutoff must be > 0");

  std::vector<double> cur;
  std::vector<double> next;
  system.init_state(cur, epsilon);
  next.resize(cur.size());

  double res = system.max_value(cur);
  int total = 0;
  for (int c = 1; c <= L; ++c) {
    const int z_end = std::min(c + cfg.window_size - 1, L);
    for (int t = 0; t < cfg.iterations; ++t) {
      res = system.update_range(cur, next, epsilon, c, z_end);
      cur.swap(next);
      ++total;
      if (!std::isfinite(res)) {
        throw ComputationFault("non-finite state during windowed decoding");
      }
    }
  }

  DERunReport report;
  report.epsilon = epsilon;
  report.converged = res < opts.delta_conv;
  report.iterations = total;
  report.max_residual = res;
  system.extract_profile(cur, report.final_profile);
  return report;
}

ThresholdResult windowed_threshold(const DeSystem& system, const WindowConfig& cfg,
                                   const ThresholdOptions& opts) {
  RunOptions run = opts.run;
  run.observer = nullptr;
  run.stream_every = 0;
  auto feasible = [&](double eps) { return windowed_decode(system, eps, cfg, run).converged; };
  return bisect_feasibility(feasible, opts.tol, opts.probe_observer);
}

}  // namespace scde
