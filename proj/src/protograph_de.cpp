#include "scde/protograph_de.hpp"

#include <algorithm>
#include <stdexcept>

#include "scde/math_util.hpp"

namespace scde {

ProtographSystem::ProtographSystem(const ProtographChain& chain)
    : dv_(chain.dv()),
      b1_(chain.b1()),
      b2_(chain.b2()),
      L_(chain.chain_length()),
      swapped_(chain.b1() > chain.b2()),
      y_(static_cast<unsigned>(4 * (chain.chain_length() + 1)), 0.0) {
  if (swapped_) std::swap(b1_, b2_);
}

void ProtographSystem::init_state(std::vector<double>& state, double epsilon) const {
  state.assign(static_cast<unsigned>(4 * L_), 0.0);
  const int m[4] = {b1_, dv_ - b1_, b2_, dv_ - b2_};
  for (int z = 0; z < L_; ++z) {
    for (int k = 0; k < 4; ++k) {
      if (m[k] > 0) state[static_cast<unsigned>(4 * z + k)] = epsilon;
    }
  }
}

double ProtographSystem::update_range(const std::vector<double>& in, std::vector<double>& out,
                                      double epsilon, int z_begin, int z_end) const {
  const int L = L_;
  const int m[4] = {b1_, dv_ - b1_, b2_, dv_ - b2_};
  const double* x = in.data();
  out.resize(static_cast<unsigned>(4 * L));

  // Check side: for every edge bundle entering check p, the erasure sent
  // back is 1 - prod over the other incoming bundles of (1 - x)^mult.
  double* y = y_.data();
  const int p_lo = std::max(1, z_begin);
  const int p_hi = std::min(L + 1, z_end + 1);
  for (int p = p_lo; p <= p_hi; ++p) {
    int kinds[4];
    double q[4];
    int mult[4];
    int n = 0;
    if (p <= L) {
      for (int k : {0, 2}) {
        if (m[k] > 0) {
          kinds[n] = k;
          q[n] = 1.0 - x[4 * (p - 1) + k];
          mult[n] = m[k];
          ++n;
        }
      }
    }
    if (p >= 2) {
      for (int k : {1, 3}) {
        if (m[k] > 0) {
          kinds[n] = k;
          q[n] = 1.0 - x[4 * (p - 2) + k];
          mult[n] = m[k];
          ++n;
        }
      }
    }
    double pre[5];
    pre[0] = 1.0;
    for (int i = 0; i < n; ++i) pre[i + 1] = pre[i] * ipow(q[i], mult[i]);
    double suf = 1.0;
    for (int i = n - 1; i >= 0; --i) {
      y[4 * (p - 1) + kinds[i]] = 1.0 - pre[i] * suf * ipow(q[i], mult[i] - 1);
      suf *= ipow(q[i], mult[i]);
    }
  }

  double res = 0.0;
  auto copy_pos = [&](int z) {
    for (int k = 0; k < 4; ++k) {
      const double v = x[4 * (z - 1) + k];
      out[static_cast<unsigned>(4 * (z - 1) + k)] = v;
      res = std::max(res, v);
    }
  };
  for (int z = 1; z < z_begin; ++z) copy_pos(z);
  for (int z = z_begin; z <= z_end; ++z) {
    const double y_same_1 = y[4 * (z - 1) + 0];
    const double y_next_1 = y[4 * z + 1];
    const double y_same_2 = y[4 * (z - 1) + 2];
    const double y_next_2 = y[4 * z + 3];
    double v[4] = {0.0, 0.0, 0.0, 0.0};
    if (m[0] > 0) {
      v[0] = epsilon * ipow(y_same_1, m[0] - 1) * (m[1] > 0 ? ipow(y_next_1, m[1]) : 1.0);
    }
    if (m[1] > 0) {
      v[1] = epsilon * (m[0] > 0 ? ipow(y_same_1, m[0]) : 1.0) * ipow(y_next_1, m[1] - 1);
    }
    if (m[2] > 0) {
      v[2] = epsilon * ipow(y_same_2, m[2] - 1) * (m[3] > 0 ? ipow(y_next_2, m[3]) : 1.0);
    }
    if (m[3] > 0) {
      v[3] = epsilon * (m[2] > 0 ? ipow(y_same_2, m[2]) : 1.0) * ipow(y_next_2, m[3] - 1);
    }
    for (int k = 0; k < 4; ++k) {
      out[static_cast<unsigned>(4 * (z - 1) + k)] = v[k];
      res = std::max(res, v[k]);
    }
  }
  for (int z = z_end + 1; z <= L; ++z) copy_pos(z);
  return res;
}

double ProtographSystem::position_value(const std::vector<double>& state, int z) const {
  const unsigned base = static_cast<unsigned>(4 * (z - 1));
  return std::max(std::max(state[base], state[base + 1]),
                  std::max(state[base + 2], state[base + 3]));
}

BundleProfile initial_bundle_profile(const ProtographChain& chain, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("channel parameter must lie in [0,1]");
  }
  BundleProfile p;
  p.epsilon = epsilon;
  const int dv = chain.dv();
  const int m[4] = {chain.b1(), dv - chain.b1(), chain.b2(), dv - chain.b2()};
  p.values.assign(static_cast<unsigned>(4 * chain.chain_length()), 0.0);
  for (int z = 0; z < chain.chain_length(); ++z) {
    for (int k = 0; k < 4; ++k) {
      if (m[k] > 0) p.values[static_cast<unsigned>(4 * z + k)] = epsilon;
    }
  }
  return p;
}

BundleProfile protograph_step(const BundleProfile& profile, const ProtographChain& chain) {
  const unsigned expected = static_cast<unsigned>(4 * chain.chain_length());
  if (profile.values.size() != expected) {
    throw std::invalid_argument("profile length does not match the chain");
  }
  for (double v : profile.values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("profile entries must lie in [0,1]");
    }
  }
  ProtographSystem sys(chain);
  // The system may store the two populations swapped; translate both ways.
  auto translate = [&](const std::vector<double>& src) {
    if (!sys.swapped()) return src;
    std::vector<double> dst(src.size());
    for (unsigned z = 0; z < src.size() / 4; ++z) {
      dst[4 * z + 0] = src[4 * z + 2];
      dst[4 * z + 1] = src[4 * z + 3];
      dst[4 * z + 2] = src[4 * z + 0];
      dst[4 * z + 3] = src[4 * z + 1];
    }
    return dst;
  };
  std::vector<double> in = translate(profile.values);
  std::vector<double> out;
  sys.step(in, out, profile.epsilon);
  BundleProfile next;
  next.epsilon = profile.epsilon;
  next.values = translate(out);
  return next;
}

}  // namespace scde
