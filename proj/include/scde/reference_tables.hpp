#pragma once

#include <vector>

namespace scde::reftab {

// Published operating points the tool reproduces. Values carry the precision
// they were published with; comparisons must respect that rounding.

// Unit-memory family (dv, 2dv) at L = 100: best coupling fraction, the
// uncoupled BP and MAP thresholds, and the coupled BP threshold at
// alpha = 1/2 and at the optimum.
struct UnitMemoryRow {
  int dv;
  double alpha_star;
  double eps_bp_uncoupled;
  double eps_map_uncoupled;
  double eps_bp_uniform;
  double eps_bp_alpha_star;
};
const std::vector<UnitMemoryRow>& unit_memory_rows();

// Width-3 smoothing family (dv, 2dv) at L = 100: best weights (the third is
// 1 - nu0 - nu1), thresholds and termination rate-loss for the uniform and
// the optimized smoothing.
struct Width3Row {
  int dv;
  double nu0_star;
  double nu1_star;
  double eps_bp_uniform;
  double eps_bp_star;
  double delta_uniform;
  double delta_star;
};
const std::vector<Width3Row>& width3_rows();

// Two-population chain at L = 100: best pair of coupling fractions and its
// threshold.
struct TwoTypeRow {
  int dv;
  double alpha_upper_star;
  double alpha_lower_star;
  double eps_bp;
};
const std::vector<TwoTypeRow>& two_type_rows();

// Best protograph segment per degree at L = 100 and its threshold.
struct ProtographRow {
  int dv;
  int b1;
  int b2;
  double eps_bp;
};
const std::vector<ProtographRow>& protograph_rows();

}  // namespace scde::reftab
