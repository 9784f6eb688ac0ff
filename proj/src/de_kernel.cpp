#include "scde/de_kernel.hpp"

#include <algorithm>
#include <stdexcept>

#include "scde/math_util.hpp"

namespace scde {

ErasureProfile initial_profile(const CoupledEnsembleSpec& spec, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("channel parameter must lie in [0,1]");
  }
  ErasureProfile p;
  p.epsilon = epsilon;
  p.values.assign(static_cast<unsigned>(spec.L + spec.width() - 1), 0.0);
  for (int z = 1; z <= spec.L; ++z) p.values[static_cast<unsigned>(z - 1)] = epsilon;
  return p;
}

SingleTypeSystem::SingleTypeSystem(CoupledEnsembleSpec spec)
    : spec_(std::move(spec)), cn_avg_(static_cast<unsigned>(spec_.L + spec_.width() - 1), 0.0) {}

void SingleTypeSystem::init_state(std::vector<double>& state, double epsilon) const {
  state.assign(static_cast<unsigned>(profile_length()), 0.0);
  for (int z = 1; z <= spec_.L; ++z) state[static_cast<unsigned>(z - 1)] = epsilon;
}

double SingleTypeSystem::update_range(const std::vector<double>& in, std::vector<double>& out,
                                      double epsilon, int z_begin, int z_end) const {
  const int L = spec_.L;
  const int w = spec_.width();
  const int P = L + w - 1;
  const double* nu = spec_.nu.weights().data();
  const double* x = in.data();

  out.resize(static_cast<unsigned>(P));

  const int dcm1 = spec_.dc - 1;
  const int dvm1 = spec_.dv - 1;

  // Per check group p: (1 - sum_j nu_j * x_{p-j})^(dc-1), with x = 0 outside
  // the stored range. Only the groups the window reads are needed. p and z
  // are 1-based, arrays 0-based.
  double* t = cn_avg_.data();
  const int p_lo = std::max(1, z_begin);
  const int p_hi = std::min(P, z_end + w - 1);
  for (int p = p_lo; p <= p_hi; ++p) {
    double acc = 0.0;
    const int jmax = std::min(w - 1, p - 1);
    for (int j = 0; j <= jmax; ++j) acc += nu[j] * x[p - j - 1];
    t[p - 1] = ipow(1.0 - acc, dcm1);
  }

  double res = 0.0;
  for (int z = 1; z < z_begin; ++z) {
    const double v = x[z - 1];
    out[static_cast<unsigned>(z - 1)] = v;
    res = std::max(res, v);
  }
  for (int z = z_begin; z <= z_end; ++z) {
    double acc = 0.0;
    for (int i = 0; i < w; ++i) acc += nu[i] * t[z + i - 1];
    const double v = epsilon * ipow(1.0 - acc, dvm1);
    out[static_cast<unsigned>(z - 1)] = v;
    res = std::max(res, v);
  }
  for (int z = z_end + 1; z <= P; ++z) {
    const double v = x[z - 1];
    out[static_cast<unsigned>(z - 1)] = v;
    res = std::max(res, v);
  }
  return res;
}

double SingleTypeSystem::position_value(const std::vector<double>& state, int z) const {
  return state[static_cast<unsigned>(z - 1)];
}

ErasureProfile de_step(const ErasureProfile& profile, const CoupledEnsembleSpec& spec) {
  const unsigned expected = static_cast<unsigned>(spec.L + spec.width() - 1);
  if (profile.values.size() != expected) {
    throw std::invalid_argument("profile length does not match the ensemble");
  }
  if (!(profile.epsilon >= 0.0 && profile.epsilon <= 1.0)) {
    throw std::invalid_argument("channel parameter must lie in [0,1]");
  }
  for (double v : profile.values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("profile entries must lie in [0,1]");
    }
  }
  SingleTypeSystem sys(spec);
  ErasureProfile next;
  next.epsilon = profile.epsilon;
  sys.step(profile.values, next.values, profile.epsilon);
  return next;
}

}  // namespace scde
