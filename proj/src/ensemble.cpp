#include "scde/ensemble.hpp"

#include <stdexcept>

#include "scde/math_util.hpp"

namespace scde {

CoupledEnsembleSpec::CoupledEnsembleSpec(int dv_, int dc_, SmoothingDistribution nu_, int L_)
    : dv(dv_), dc(dc_), nu(std::move(nu_)), L(L_) {
  if (dv < 2) throw std::invalid_argument("variable degree must be >= 2");
  if (dc <= dv) throw std::invalid_argument("check degree must exceed variable degree");
  if (L < 2) throw std::invalid_argument("chain length must be >= 2");
}

TwoTypeSpec::TwoTypeSpec(int dv_, double alpha_upper_, double alpha_lower_, int L_)
    : dv(dv_), alpha_upper(alpha_upper_), alpha_lower(alpha_lower_), L(L_) {
  if (dv < 2) throw std::invalid_argument("variable degree must be >= 2");
  if (!(alpha_upper >= 0.0 && alpha_upper <= 1.0) ||
      !(alpha_lower >= 0.0 && alpha_lower <= 1.0)) {
    throw std::invalid_argument("coupling fractions must lie in [0,1]");
  }
  if (L < 2) throw std::invalid_argument("chain length must be >= 2");
}

double rate_loss_delta(int dv, int dc, const SmoothingDistribution& nu) {
  if (dv < 2 || dc <= dv) throw std::invalid_argument("bad degree pair");
  const int w = nu.width();
  // At each of the w-1 boundary cut points the check groups on either side
  // see only the prefix (resp. suffix) mass of the smoothing, which is what
  // makes some checks trivially satisfied and costs rate.
  double sum = 0.0;
  for (int k = 0; k + 1 < w; ++k) {
    double prefix = 0.0;
    for (int i = 0; i <= k; ++i) prefix += nu.weight(i);
    double suffix = 0.0;
    for (int i = k + 1; i < w; ++i) suffix += nu.weight(i);
    sum += ipow(prefix, dc) + ipow(suffix, dc);
  }
  return static_cast<double>(dv) / dc * (w - 1 - sum);
}

double design_rate(const CoupledEnsembleSpec& spec) {
  return 1.0 - static_cast<double>(spec.dv) / spec.dc -
         rate_loss_delta(spec.dv, spec.dc, spec.nu) / spec.L;
}

}  // namespace scde
