#pragma once

#include "scde/smoothing.hpp"

namespace scde {

// Parameters of a coupled regular ensemble: (dv, dc)-regular component code,
// chain of L positions, edges smoothed over nu.width() consecutive check
// groups. Treat instances as immutable values.
struct CoupledEnsembleSpec {
  int dv;
  int dc;
  SmoothingDistribution nu;
  int L;

  CoupledEnsembleSpec(int dv_, int dc_, SmoothingDistribution nu_, int L_);

  int width() const { return nu.width(); }
};

// Two-population variant: each position holds an upper and a lower variable
// node set with their own unit-memory coupling fractions. Check nodes have
// degree 2*dv by construction.
struct TwoTypeSpec {
  int dv;
  double alpha_upper;
  double alpha_lower;
  int L;

  TwoTypeSpec(int dv_, double alpha_upper_, double alpha_lower_, int L_);
};

// Rate penalty caused by the stronger checks at the chain ends, before
// dividing by L. Depends only on the component degrees and the smoothing.
double rate_loss_delta(int dv, int dc, const SmoothingDistribution& nu);

// 1 - dv/dc - rate_loss_delta/L.
double design_rate(const CoupledEnsembleSpec& spec);

}  // namespace scde
