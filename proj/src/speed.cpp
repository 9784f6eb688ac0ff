#include "scde/speed.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "scde/errors.hpp"
#include "scde/parallel.hpp"

namespace scde {

namespace {

// Left frontier: largest z in [1, mid] with value <= cut, 0 if none.
int left_frontier(const std::vector<double>& prof, int mid, double cut) {
  for (int z = mid; z >= 1; --z) {
    if (prof[static_cast<unsigned>(z - 1)] <= cut) return z;
  }
  return 0;
}

// Right frontier: smallest z in (mid, P] with value <= cut, P+1 if none.
int right_frontier(const std::vector<double>& prof, int mid, double cut) {
  const int P = static_cast<int>(prof.size());
  for (int z = mid + 1; z <= P; ++z) {
    if (prof[static_cast<unsigned>(z - 1)] <= cut) return z;
  }
  return P + 1;
}

}  // namespace

SpeedEstimate estimate_speed(const DeSystem& system, double epsilon, const SpeedOptions& opts) {
  const int L = system.chain_length();
  const int w = system.coupling_width();
  const int D = opts.displacement;
  if (D < 1) throw std::invalid_argument("displacement must be >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("channel parameter must lie in (0,1] for a speed measurement");
  }
  if (L < 4 * D + 2 * w) {
    throw std::invalid_argument("chain too short for this displacement");
  }
  if (opts.max_iters < 1) throw std::invalid_argument("iteration cap must be >= 1");
  const int advance_needed = opts.burn_in_advance >= 0 ? opts.burn_in_advance : w + 5;

  const int mid = L / 2;
  const double cut = 0.5 * epsilon;

  std::vector<double> cur;
  std::vector<double> next;
  system.init_state(cur, epsilon);
  next.resize(cur.size());
  std::vector<double> prof;
  system.extract_profile(cur, prof);

  const int left0 = left_frontier(prof, mid, cut);
  const int right0 = right_frontier(prof, mid, cut);

  auto step_once = [&]() {
    const double res = system.step(cur, next, epsilon);
    if (!std::isfinite(res)) throw ComputationFault("non-finite state during speed estimation");
    bool stalled = true;
    for (unsigned i = 0; i < cur.size(); ++i) {
      if (cur[i] != next[i]) {
        stalled = false;
        break;
      }
    }
    cur.swap(next);
    system.extract_profile(cur, prof);
    return std::pair<double, bool>(res, stalled);
  };

  // Burn-in: wait until either frontier has moved far enough into the chain.
  // A genuine front advances at most w - 1 positions per iteration (the
  // influence radius of one update); a larger jump means the bulk crossed the
  // cut uniformly, i.e. the whole chain is collapsing rather than decoding
  // wave-like.
  int burn_in = 0;
  int settled = -1;
  int prev_left = left0;
  int prev_right = right0;
  for (int t = 1;; ++t) {
    auto [res, stalled] = step_once();
    if (res < opts.delta_conv) {
      throw NoWaveError("chain collapsed before a front formed; epsilon is too small");
    }
    if (stalled) {
      throw NoWaveError("profile reached a fixed point; epsilon is at or above the threshold");
    }
    const int fl = left_frontier(prof, mid, cut);
    const int fr = right_frontier(prof, mid, cut);
    if (fl - prev_left > w || prev_right - fr > w) {
      throw NoWaveError("profile collapsed uniformly; epsilon is below the uncoupled threshold");
    }
    prev_left = fl;
    prev_right = fr;
    if (settled < 0) {
      const int adv_left = fl - left0;
      const int adv_right = right0 - fr;
      if (adv_left >= advance_needed || adv_right >= advance_needed) {
        settled = 0;
      } else if (t >= opts.max_iters) {
        throw NoWaveError("front did not move within the iteration cap");
      }
    } else {
      ++settled;
    }
    if (settled >= opts.settle_iters) {
      burn_in = t;
      break;
    }
  }

  const std::vector<double> ref = prof;
  const int P = static_cast<int>(prof.size());

  auto covered = [&]() {
    bool left_ok = true;
    for (int z = 1; z <= mid; ++z) {
      const double bound = (z - D >= 1) ? ref[static_cast<unsigned>(z - D - 1)] : 0.0;
      if (prof[static_cast<unsigned>(z - 1)] > bound) {
        left_ok = false;
        break;
      }
    }
    if (left_ok) return true;
    for (int z = mid + 1; z <= P; ++z) {
      const double bound = (z + D <= P) ? ref[static_cast<unsigned>(z + D - 1)] : 0.0;
      if (prof[static_cast<unsigned>(z - 1)] > bound) return false;
    }
    return true;
  };

  for (int T = 1; T <= opts.max_iters; ++T) {
    auto [res, stalled] = step_once();
    if (stalled && res >= opts.delta_conv) {
      throw NoWaveError("profile reached a fixed point during the timed phase");
    }
    if (covered()) {
      SpeedEstimate est;
      est.displacement = D;
      est.iterations = T;
      est.burn_in = burn_in;
      est.speed = static_cast<double>(D) / T;
      return est;
    }
  }
  throw NoWaveError("front did not cover the displacement within the iteration cap");
}

std::vector<SpeedGridEntry> speed_contours(
    const std::function<std::unique_ptr<DeSystem>(double)>& make_system,
    const std::vector<double>& params, const std::vector<double>& epsilons,
    const SpeedOptions& opts, int workers) {
  const int n_eps = static_cast<int>(epsilons.size());
  const int total = static_cast<int>(params.size()) * n_eps;
  std::vector<SpeedGridEntry> grid(static_cast<unsigned>(total));
  parallel_for(
      total,
      [&](int idx) {
        const double param = params[static_cast<unsigned>(idx / n_eps)];
        const double eps = epsilons[static_cast<unsigned>(idx % n_eps)];
        SpeedGridEntry entry;
        entry.param = param;
        entry.epsilon = eps;
        auto system = make_system(param);
        try {
          entry.speed = estimate_speed(*system, eps, opts).speed;
          entry.has_wave = true;
        } catch (const NoWaveError&) {
          entry.speed = std::numeric_limits<double>::quiet_NaN();
          entry.has_wave = false;
        }
        grid[static_cast<unsigned>(idx)] = entry;
      },
      workers);
  return grid;
}

}  // namespace scde
