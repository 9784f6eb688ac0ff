#include "scde/sweep.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "scde/de_kernel.hpp"
#include "scde/parallel.hpp"
#include "scde/protograph_de.hpp"
#include "scde/threshold.hpp"
#include "scde/two_type.hpp"

namespace scde {

namespace {

struct GridEval {
  // Returns the threshold at the given bisection tolerance and stores the
  // final bracket width.
  std::function<double(const std::vector<double>&, double tol, double& bracket)> threshold;
  std::function<double(const std::vector<double>&)> rate_loss;
};

void check_options(const SweepOptions& o) {
  if (!(o.sweep_tol > 0.0) || !(o.final_tol > 0.0)) {
    throw std::invalid_argument("sweep tolerances must be positive");
  }
  if (o.max_iters < 1) throw std::invalid_argument("iteration cap must be >= 1");
  if (!(o.delta_conv > 0.0)) throw std::invalid_argument("convergence cutoff must be > 0");
}

std::vector<SweepPoint> evaluate_batch(const std::vector<std::vector<double>>& param_sets,
                                       const GridEval& eval, double tol, int stage,
                                       int workers) {
  std::vector<SweepPoint> pts(param_sets.size());
  parallel_for(
      static_cast<int>(param_sets.size()),
      [&](int i) {
        SweepPoint p;
        p.params = param_sets[static_cast<unsigned>(i)];
        p.stage = stage;
        p.threshold = eval.threshold(p.params, tol, p.bracket_width);
        p.rate_loss = eval.rate_loss(p.params);
        pts[static_cast<unsigned>(i)] = std::move(p);
      },
      workers);
  return pts;
}

SweepResult run_sweep(std::vector<std::string> names, double step_used,
                      const std::vector<std::vector<double>>& coarse,
                      const std::function<std::vector<std::vector<double>>(
                          const std::vector<double>&)>& refine_around,
                      const GridEval& eval, const SweepOptions& opts) {
  SweepResult r;
  r.param_names = std::move(names);
  r.grid_step = step_used;
  r.sweep_tol = opts.sweep_tol;
  r.final_tol = opts.final_tol;
  r.tie_window = 2.0 * opts.sweep_tol;

  r.entries = evaluate_batch(coarse, eval, opts.sweep_tol, 0, opts.workers);

  std::string sel;
  const int ci = select_best(r.entries, r.tie_window, sel);
  r.coarse_best.params = r.entries[static_cast<unsigned>(ci)].params;
  r.coarse_best.sweep_threshold = r.entries[static_cast<unsigned>(ci)].threshold;
  r.coarse_best.rate_loss = r.entries[static_cast<unsigned>(ci)].rate_loss;
  r.coarse_best.selection = sel;

  if (opts.refine && refine_around) {
    auto extra = refine_around(r.coarse_best.params);
    auto pts = evaluate_batch(extra, eval, opts.sweep_tol, 1, opts.workers);
    r.entries.insert(r.entries.end(), std::make_move_iterator(pts.begin()),
                     std::make_move_iterator(pts.end()));
  }

  const int bi = select_best(r.entries, r.tie_window, sel);
  r.best.params = r.entries[static_cast<unsigned>(bi)].params;
  r.best.sweep_threshold = r.entries[static_cast<unsigned>(bi)].threshold;
  r.best.rate_loss = r.entries[static_cast<unsigned>(bi)].rate_loss;
  r.best.selection = sel;

  double bracket = 0.0;
  r.best.threshold = eval.threshold(r.best.params, opts.final_tol, bracket);
  if (r.coarse_best.params == r.best.params) {
    r.coarse_best.threshold = r.best.threshold;
  } else {
    r.coarse_best.threshold = eval.threshold(r.coarse_best.params, opts.final_tol, bracket);
  }
  return r;
}

}  // namespace

int select_best(const std::vector<SweepPoint>& entries, double tie_window,
                std::string& selection) {
  if (entries.empty()) throw std::invalid_argument("cannot select from an empty sweep");
  double tmax = entries[0].threshold;
  for (const auto& e : entries) tmax = std::max(tmax, e.threshold);

  constexpr double kRateSlop = 1e-12;
  int best = -1;
  int candidates = 0;
  for (int i = 0; i < static_cast<int>(entries.size()); ++i) {
    const auto& e = entries[static_cast<unsigned>(i)];
    if (e.threshold < tmax - tie_window) continue;
    ++candidates;
    if (best < 0) {
      best = i;
      continue;
    }
    const auto& b = entries[static_cast<unsigned>(best)];
    if (e.rate_loss < b.rate_loss - kRateSlop) {
      best = i;
    } else if (e.rate_loss <= b.rate_loss + kRateSlop && e.params < b.params) {
      best = i;
    }
  }

  selection = "threshold";
  if (candidates > 1) {
    bool rate_decides = true;
    const auto& b = entries[static_cast<unsigned>(best)];
    for (int i = 0; i < static_cast<int>(entries.size()); ++i) {
      if (i == best) continue;
      const auto& e = entries[static_cast<unsigned>(i)];
      if (e.threshold < tmax - tie_window) continue;
      if (e.rate_loss <= b.rate_loss + kRateSlop) {
        rate_decides = false;
        break;
      }
    }
    selection = rate_decides ? "rate-loss" : "lexicographic";
  }
  return best;
}

SweepResult optimize_alpha(int dv, int dc, int L, const SweepOptions& in_opts) {
  SweepOptions opts = in_opts;
  if (opts.grid_step <= 0.0) opts.grid_step = 0.005;
  check_options(opts);
  (void)CoupledEnsembleSpec(dv, dc, SmoothingDistribution::unit_memory(0.5), L);

  const double s = opts.grid_step;
  std::vector<std::vector<double>> coarse;
  for (int k = 0;; ++k) {
    const double a = k * s;
    if (a > 0.5 + 1e-12) break;
    coarse.push_back({std::min(a, 0.5)});
  }

  GridEval eval;
  eval.threshold = [dv, dc, L, &opts](const std::vector<double>& p, double tol, double& bw) {
    SingleTypeSystem sys(CoupledEnsembleSpec(dv, dc, SmoothingDistribution::unit_memory(p[0]), L));
    ThresholdOptions to;
    to.tol = tol;
    to.run.delta_conv = opts.delta_conv;
    to.run.max_iters = opts.max_iters;
    auto res = bp_threshold(sys, to);
    bw = res.bracket_width;
    return res.threshold;
  };
  eval.rate_loss = [dv, dc](const std::vector<double>& p) {
    return rate_loss_delta(dv, dc, SmoothingDistribution::unit_memory(p[0]));
  };

  auto refine = [s](const std::vector<double>& p) {
    std::vector<std::vector<double>> out;
    for (int d = -5; d <= 5; ++d) {
      if (d == 0) continue;
      const double a = p[0] + d * (s / 10.0);
      if (a < -1e-15 || a > 0.5 + 1e-12) continue;
      out.push_back({std::min(std::max(a, 0.0), 0.5)});
    }
    return out;
  };

  return run_sweep({"alpha"}, s, coarse, refine, eval, opts);
}

SweepResult optimize_nu3(int dv, int dc, int L, const SweepOptions& in_opts) {
  SweepOptions opts = in_opts;
  if (opts.grid_step <= 0.0) opts.grid_step = 1.0 / 38.0;
  check_options(opts);
  (void)CoupledEnsembleSpec(dv, dc, SmoothingDistribution::uniform(3), L);

  const double s = opts.grid_step;
  auto make_point = [](double n0, double n1) {
    n0 = std::max(n0, 0.0);
    n1 = std::max(n1, 0.0);
    const double n2 = std::max(1.0 - n0 - n1, 0.0);
    return std::vector<double>{n0, n1, n2};
  };

  std::vector<std::vector<double>> coarse;
  for (int a = 0;; ++a) {
    const double n0 = a * s;
    if (n0 > 1.0 + 1e-12) break;
    for (int b = 0;; ++b) {
      const double n1 = b * s;
      if (n0 + n1 > 1.0 + 1e-12) break;
      coarse.push_back(make_point(n0, n1));
    }
  }

  GridEval eval;
  eval.threshold = [dv, dc, L, &opts](const std::vector<double>& p, double tol, double& bw) {
    SingleTypeSystem sys(CoupledEnsembleSpec(dv, dc, SmoothingDistribution(p), L));
    ThresholdOptions to;
    to.tol = tol;
    to.run.delta_conv = opts.delta_conv;
    to.run.max_iters = opts.max_iters;
    auto res = bp_threshold(sys, to);
    bw = res.bracket_width;
    return res.threshold;
  };
  eval.rate_loss = [dv, dc](const std::vector<double>& p) {
    return rate_loss_delta(dv, dc, SmoothingDistribution(p));
  };

  auto refine = [s, make_point](const std::vector<double>& p) {
    std::vector<std::vector<double>> out;
    for (int da = -5; da <= 5; ++da) {
      for (int db = -5; db <= 5; ++db) {
        if (da == 0 && db == 0) continue;
        const double n0 = p[0] + da * (s / 10.0);
        const double n1 = p[1] + db * (s / 10.0);
        if (n0 < -1e-15 || n1 < -1e-15 || n0 + n1 > 1.0 + 1e-12) continue;
        out.push_back(make_point(n0, n1));
      }
    }
    return out;
  };

  return run_sweep({"nu0", "nu1", "nu2"}, s, coarse, refine, eval, opts);
}

SweepResult optimize_two_type(int dv, int L, const SweepOptions& in_opts) {
  SweepOptions opts = in_opts;
  if (opts.grid_step <= 0.0) opts.grid_step = 0.01;
  check_options(opts);
  (void)TwoTypeSpec(dv, 0.5, 0.5, L);

  const double s = opts.grid_step;
  std::vector<std::vector<double>> coarse;
  for (int i = 0;; ++i) {
    const double a = i * s;
    if (a > 1.0 + 1e-12) break;
    for (int j = 0;; ++j) {
      const double b = j * s;
      if (b > 1.0 + 1e-12) break;
      const double sum = a + b;
      if (sum > 1.0 + 1e-12) break;
      if (std::fabs(sum - 1.0) <= 1e-12) {
        // Reflection fixed line: keep the lexicographically smaller of
        // (a, b) and (1-a, 1-b).
        if (a > 0.5 + 1e-15) continue;
        if (std::fabs(a - 0.5) <= 1e-15 && b > 0.5 + 1e-15) continue;
      }
      coarse.push_back({std::min(a, 1.0), std::min(b, 1.0)});
    }
  }

  GridEval eval;
  eval.threshold = [dv, L, &opts](const std::vector<double>& p, double tol, double& bw) {
    TwoTypeSystem sys(TwoTypeSpec(dv, p[0], p[1], L));
    ThresholdOptions to;
    to.tol = tol;
    to.run.delta_conv = opts.delta_conv;
    to.run.max_iters = opts.max_iters;
    auto res = bp_threshold(sys, to);
    bw = res.bracket_width;
    return res.threshold;
  };
  eval.rate_loss = [dv](const std::vector<double>& p) {
    const double avg = 0.5 * (p[0] + p[1]);
    return rate_loss_delta(dv, 2 * dv, SmoothingDistribution::unit_memory(avg));
  };

  auto refine = [s](const std::vector<double>& p) {
    std::vector<std::vector<double>> out;
    for (int da = -5; da <= 5; ++da) {
      for (int db = -5; db <= 5; ++db) {
        if (da == 0 && db == 0) continue;
        const double a = p[0] + da * (s / 10.0);
        const double b = p[1] + db * (s / 10.0);
        if (a < -1e-15 || b < -1e-15 || a > 1.0 + 1e-12 || b > 1.0 + 1e-12) continue;
        out.push_back({std::min(std::max(a, 0.0), 1.0), std::min(std::max(b, 0.0), 1.0)});
      }
    }
    return out;
  };

  return run_sweep({"alpha_upper", "alpha_lower"}, s, coarse, refine, eval, opts);
}

SweepResult protograph_search_one(int dv, int L, const SweepOptions& in_opts) {
  SweepOptions opts = in_opts;
  opts.grid_step = 1.0;
  check_options(opts);
  (void)ProtographChain(dv, 0, 0, L);

  std::vector<std::vector<double>> coarse;
  for (int b1 = 0; b1 <= dv; ++b1) {
    for (int b2 = 0; b2 <= dv; ++b2) {
      // One representative per class under population swap and chain
      // reflection: keep only the lexicographically smallest tuple.
      const std::pair<int, int> self{b1, b2};
      const std::pair<int, int> orbit[3] = {
          {b2, b1}, {dv - b1, dv - b2}, {dv - b2, dv - b1}};
      bool canonical = true;
      for (const auto& o : orbit) {
        if (o < self) {
          canonical = false;
          break;
        }
      }
      if (canonical) coarse.push_back({static_cast<double>(b1), static_cast<double>(b2)});
    }
  }

  GridEval eval;
  eval.threshold = [dv, L, &opts](const std::vector<double>& p, double tol, double& bw) {
    ProtographSystem sys(
        build_protograph_chain(dv, static_cast<int>(p[0]), static_cast<int>(p[1]), L));
    ThresholdOptions to;
    to.tol = tol;
    to.run.delta_conv = opts.delta_conv;
    to.run.max_iters = opts.max_iters;
    auto res = bp_threshold(sys, to);
    bw = res.bracket_width;
    return res.threshold;
  };
  eval.rate_loss = [](const std::vector<double>&) {
    // One extra check per chain, independent of the splits: L * (1/2 - rate).
    return 0.5;
  };

  return run_sweep({"b1", "b2"}, 1.0, coarse, nullptr, eval, opts);
}

std::vector<SweepResult> protograph_search(int dv_min, int dv_max, int L,
                                           const SweepOptions& opts) {
  if (dv_min > dv_max) throw std::invalid_argument("empty degree range");
  std::vector<SweepResult> out;
  for (int dv = dv_min; dv <= dv_max; ++dv) {
    out.push_back(protograph_search_one(dv, L, opts));
  }
  return out;
}

}  // namespace scde
