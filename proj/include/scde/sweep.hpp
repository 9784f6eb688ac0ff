#pragma once

#include <string>
#include <vector>

namespace scde {

struct SweepPoint {
  std::vector<double> params;
  double threshold = 0.0;
  double bracket_width = 0.0;
  double rate_loss = 0.0;
  int stage = 0;  // 0 = coarse grid, 1 = local refinement
  std::string status = "ok";
};

struct SweepBest {
  std::vector<double> params;
  double threshold = 0.0;        // re-evaluated at final_tol
  double sweep_threshold = 0.0;  // value observed during the sweep
  double rate_loss = 0.0;
  std::string selection;  // which rule picked it: threshold / rate-loss / lexicographic
};

struct SweepResult {
  std::vector<std::string> param_names;
  std::vector<SweepPoint> entries;  // coarse grid first, then refinement, in grid order
  SweepBest best;
  SweepBest coarse_best;  // selected among the coarse entries only
  double grid_step = 0.0;
  double sweep_tol = 0.0;
  double final_tol = 0.0;
  double tie_window = 0.0;
};

struct SweepOptions {
  double grid_step = 0.0;  // 0 = command default
  double sweep_tol = 1e-4;
  double final_tol = 1e-5;
  double delta_conv = 1e-10;
  int max_iters = 50000;
  int workers = 0;
  bool refine = true;
};

// Selection rule shared by all sweeps: thresholds within tie_window of the
// maximum count as tied; ties fall back to the smaller rate loss, then to
// the lexicographically smallest parameter vector. Returns the entry index
// and stores the deciding rule in `selection`.
int select_best(const std::vector<SweepPoint>& entries, double tie_window,
                std::string& selection);

// Threshold of (dv, dc, [alpha, 1-alpha], L) over alpha in [0, 1/2]
// (default step 0.005), one local refinement at step/10 around the maximum.
SweepResult optimize_alpha(int dv, int dc, int L, const SweepOptions& opts = {});

// Threshold over width-3 smoothings on the simplex grid (default step 1/38),
// one local refinement at step/10 around the maximum.
SweepResult optimize_nu3(int dv, int dc, int L, const SweepOptions& opts = {});

// Threshold of the two-population chain over (alpha_upper, alpha_lower) in
// [0,1]^2, default step 0.01. Pairs equivalent under the
// (a, b) ~ (1-a, 1-b) reflection are enumerated once, keeping the
// lexicographically smaller representative. The rate-loss column uses the
// width-2 smoothing averaged over the two populations.
SweepResult optimize_two_type(int dv, int L, const SweepOptions& opts = {});

// Threshold over the segment splits (b1, b2) of one chained protograph
// family, one entry per equivalence class under population swap and chain
// reflection. The grid is discrete, so there is no refinement stage.
SweepResult protograph_search_one(int dv, int L, const SweepOptions& opts = {});

// protograph_search_one for each dv in [dv_min, dv_max].
std::vector<SweepResult> protograph_search(int dv_min, int dv_max, int L,
                                           const SweepOptions& opts = {});

}  // namespace scde
