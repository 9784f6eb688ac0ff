#include "scde/two_type.hpp"

#include <algorithm>
#include <stdexcept>

#include "scde/math_util.hpp"

namespace scde {

TwoTypeSystem::TwoTypeSystem(TwoTypeSpec spec)
    : spec_(spec),
      y_upper_(static_cast<unsigned>(spec_.L + 1), 0.0),
      y_lower_(static_cast<unsigned>(spec_.L + 1), 0.0) {}

void TwoTypeSystem::init_state(std::vector<double>& state, double epsilon) const {
  state.assign(static_cast<unsigned>(2 * spec_.L), epsilon);
}

double TwoTypeSystem::update_range(const std::vector<double>& in, std::vector<double>& out,
                                   double epsilon, int z_begin, int z_end) const {
  const int L = spec_.L;
  const double au = spec_.alpha_upper;
  const double al = spec_.alpha_lower;
  const int dv = spec_.dv;
  const double* xu = in.data();      // upper block
  const double* xl = in.data() + L;  // lower block

  out.resize(static_cast<unsigned>(2 * L));

  // Check side. Check group p in [1, L+1] collects the same-position edges of
  // position p and the shifted edges of position p-1; positions outside
  // [1, L] contribute erasure 0.
  double* yu = y_upper_.data();
  double* yl = y_lower_.data();
  const int p_lo = std::max(1, z_begin);
  const int p_hi = std::min(L + 1, z_end + 1);
  for (int p = p_lo; p <= p_hi; ++p) {
    const double xu_here = (p <= L) ? xu[p - 1] : 0.0;
    const double xu_prev = (p >= 2) ? xu[p - 2] : 0.0;
    const double xl_here = (p <= L) ? xl[p - 1] : 0.0;
    const double xl_prev = (p >= 2) ? xl[p - 2] : 0.0;
    const double u = 1.0 - (au * xu_here + (1.0 - au) * xu_prev);
    const double v = 1.0 - (al * xl_here + (1.0 - al) * xl_prev);
    const double fu = ipow(u, dv - 1);
    const double fl = ipow(v, dv - 1);
    // Residual degree towards one population is dv-1, towards the other dv.
    yu[p - 1] = fu * fl * v;
    yl[p - 1] = fu * fl * u;
  }

  double res = 0.0;
  auto emit = [&](int z, double vu, double vl) {
    out[static_cast<unsigned>(z - 1)] = vu;
    out[static_cast<unsigned>(L + z - 1)] = vl;
    res = std::max(res, std::max(vu, vl));
  };
  for (int z = 1; z < z_begin; ++z) emit(z, xu[z - 1], xl[z - 1]);
  for (int z = z_begin; z <= z_end; ++z) {
    const double su = au * yu[z - 1] + (1.0 - au) * yu[z];
    const double sl = al * yl[z - 1] + (1.0 - al) * yl[z];
    emit(z, epsilon * ipow(1.0 - su, dv - 1), epsilon * ipow(1.0 - sl, dv - 1));
  }
  for (int z = z_end + 1; z <= L; ++z) emit(z, xu[z - 1], xl[z - 1]);
  return res;
}

double TwoTypeSystem::position_value(const std::vector<double>& state, int z) const {
  return std::max(state[static_cast<unsigned>(z - 1)],
                  state[static_cast<unsigned>(spec_.L + z - 1)]);
}

TwoTypeProfile initial_two_type_profile(const TwoTypeSpec& spec, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("channel parameter must lie in [0,1]");
  }
  TwoTypeProfile p;
  p.epsilon = epsilon;
  p.upper.assign(static_cast<unsigned>(spec.L), epsilon);
  p.lower.assign(static_cast<unsigned>(spec.L), epsilon);
  return p;
}

TwoTypeProfile two_type_step(const TwoTypeProfile& profile, const TwoTypeSpec& spec) {
  const unsigned L = static_cast<unsigned>(spec.L);
  if (profile.upper.size() != L || profile.lower.size() != L) {
    throw std::invalid_argument("profile length does not match the chain");
  }
  for (const auto* vec : {&profile.upper, &profile.lower}) {
    for (double v : *vec) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("profile entries must lie in [0,1]");
      }
    }
  }
  TwoTypeSystem sys(spec);
  std::vector<double> in(2 * L);
  std::copy(profile.upper.begin(), profile.upper.end(), in.begin());
  std::copy(profile.lower.begin(), profile.lower.end(), in.begin() + spec.L);
  std::vector<double> out;
  sys.step(in, out, profile.epsilon);
  TwoTypeProfile next;
  next.epsilon = profile.epsilon;
  next.upper.assign(out.begin(), out.begin() + spec.L);
  next.lower.assign(out.begin() + spec.L, out.end());
  return next;
}

}  // namespace scde
