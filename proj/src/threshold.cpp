#include "scde/threshold.hpp"

#include <cmath>
#include <stdexcept>

#include "scde/errors.hpp"

namespace scde {

DERunReport run_de(const DeSystem& system, double epsilon, const RunOptions& opts) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("channel parameter must lie in [0,1]");
  }
  if (opts.max_iters < 1) throw std::invalid_argument("iteration cap must be >= 1");
  if (!(opts.delta_conv > 0.0)) throw std::invalid_argument("convergence cutoff must be > 0");

  std::vector<double> cur;
  std::vector<double> next;
  system.init_state(cur, epsilon);
  next.resize(cur.size());

  std::vector<double> profile;
  auto notify = [&](int iter, const std::vector<double>& state) {
    if (opts.observer && opts.stream_every > 0) {
      system.extract_profile(state, profile);
      opts.observer(iter, profile);
    }
  };

  DERunReport report;
  report.epsilon = epsilon;
  double res = system.max_value(cur);
  int iter = 0;
  while (iter < opts.max_iters) {
    res = system.step(cur, next, epsilon);
    ++iter;
    if (!std::isfinite(res)) {
      throw ComputationFault("non-finite state during density evolution");
    }
    bool stalled = true;
    for (unsigned i = 0; i < cur.size(); ++i) {
      if (cur[i] != next[i]) {
        stalled = false;
        break;
      }
    }
    cur.swap(next);
    if (opts.stream_every > 0 && iter % opts.stream_every == 0) notify(iter, cur);
    if (res < opts.delta_conv) {
      report.converged = true;
      break;
    }
    // An exactly stationary state can never leave the fixed point, so the
    // verdict equals running out the cap.
    if (stalled) break;
  }
  report.iterations = iter;
  report.max_residual = res;
  system.extract_profile(cur, report.final_profile);
  if (opts.observer && opts.stream_every > 0 && iter % opts.stream_every != 0) {
    notify(iter, cur);
  }
  return report;
}

ThresholdResult bisect_feasibility(const std::function<bool(double)>& feasible, double tol,
                                   const std::function<void(double, bool)>& probe_observer) {
  if (!(tol > 0.0) || tol >= 1.0) throw std::invalid_argument("bisection tolerance must lie in (0,1)");
  double lo = 0.0;  // decodable by definition: the all-zero channel erases nothing
  double hi = 1.0;
  int runs = 0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const bool ok = feasible(mid);
    ++runs;
    if (probe_observer) probe_observer(mid, ok);
    (ok ? lo : hi) = mid;
  }
  ThresholdResult r;
  r.threshold = 0.5 * (lo + hi);
  r.bracket_width = hi - lo;
  r.runs = runs;
  return r;
}

ThresholdResult bp_threshold(const DeSystem& system, const ThresholdOptions& opts) {
  RunOptions run = opts.run;
  run.observer = nullptr;
  run.stream_every = 0;
  auto feasible = [&](double eps) { return run_de(system, eps, run).converged; };
  return bisect_feasibility(feasible, opts.tol, opts.probe_observer);
}

}  // namespace scde
