#pragma once

// Shared helpers for the test binaries: independently coded update oracles
// (direct transcriptions using std::pow, kept deliberately naive) and small
// deterministic generators for property checks.

#include <cmath>
#include <random>
#include <vector>

#include "scde/ensemble.hpp"
#include "scde/smoothing.hpp"

namespace testsup {

// One update of the coupled recursion, written as a plain scalar loop.
// Positions run over z in [1, L]; the stored vector covers [1, L + w - 1]
// and reads outside it (or beyond L) are zero.
inline std::vector<double> naive_coupled_step(const std::vector<double>& x,
                                              const scde::CoupledEnsembleSpec& spec,
                                              double epsilon) {
  const int L = spec.L;
  const int w = spec.nu.width();
  const int P = L + w - 1;
  auto value_at = [&](int q) -> double {
    if (q < 1 || q > P) return 0.0;
    return x[static_cast<unsigned>(q - 1)];
  };
  std::vector<double> out(x);
  for (int z = 1; z <= L; ++z) {
    double outer = 0.0;
    for (int i = 0; i < w; ++i) {
      const int p = z + i;
      double conv = 0.0;
      for (int j = 0; j < w; ++j) conv += spec.nu.weight(j) * value_at(p - j);
      outer += spec.nu.weight(i) * std::pow(1.0 - conv, spec.dc - 1);
    }
    out[static_cast<unsigned>(z - 1)] =
        epsilon * std::pow(1.0 - outer, spec.dv - 1);
  }
  return out;
}

// Classical uniformly smoothed update with the 1/w factors written out.
inline std::vector<double> classical_uniform_step(const std::vector<double>& x, int dv, int dc,
                                                  int w, int L, double epsilon) {
  const int P = L + w - 1;
  auto value_at = [&](int q) -> double {
    if (q < 1 || q > P) return 0.0;
    return x[static_cast<unsigned>(q - 1)];
  };
  std::vector<double> out(x);
  for (int z = 1; z <= L; ++z) {
    double outer = 0.0;
    for (int i = 0; i < w; ++i) {
      double conv = 0.0;
      for (int j = 0; j < w; ++j) conv += value_at(z + i - j) / w;
      outer += std::pow(1.0 - conv, dc - 1) / w;
    }
    out[static_cast<unsigned>(z - 1)] =
        epsilon * std::pow(1.0 - outer, dv - 1);
  }
  return out;
}

// Deterministic profile generator for property tests.
inline std::vector<double> random_profile(std::mt19937_64& rng, int length, double hi) {
  std::uniform_real_distribution<double> dist(0.0, hi);
  std::vector<double> out(static_cast<unsigned>(length));
  for (auto& v : out) v = dist(rng);
  return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (unsigned i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace testsup
