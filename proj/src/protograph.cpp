#include "scde/protograph.hpp"

#include <stdexcept>

namespace scde {

ProtographChain::ProtographChain(int dv, int b1, int b2, int L)
    : dv_(dv), b1_(b1), b2_(b2), L_(L) {
  if (dv < 2) throw std::invalid_argument("variable degree must be >= 2");
  if (b1 < 0 || b1 > dv || b2 < 0 || b2 > dv) {
    throw std::invalid_argument("segment splits must lie in [0, dv]");
  }
  if (L < 2) throw std::invalid_argument("chain length must be >= 2");
}

int ProtographChain::check_degree(int cn_position) const {
  if (cn_position < 1 || cn_position > L_ + 1) {
    throw std::invalid_argument("check position out of range");
  }
  int deg = 0;
  if (cn_position <= L_) deg += b1_ + b2_;
  if (cn_position >= 2) deg += (dv_ - b1_) + (dv_ - b2_);
  return deg;
}

std::vector<EdgeBundle> ProtographChain::bundles() const {
  std::vector<EdgeBundle> out;
  out.reserve(static_cast<unsigned>(4 * L_));
  for (int z = 1; z <= L_; ++z) {
    if (b1_ > 0) out.push_back({z, 0, z, b1_});
    if (dv_ - b1_ > 0) out.push_back({z, 0, z + 1, dv_ - b1_});
    if (b2_ > 0) out.push_back({z, 1, z, b2_});
    if (dv_ - b2_ > 0) out.push_back({z, 1, z + 1, dv_ - b2_});
  }
  return out;
}

double ProtographChain::design_rate() const {
  // 2L variable nodes, L+1 check nodes.
  return 1.0 - (L_ + 1.0) / (2.0 * L_);
}

ProtographChain build_protograph_chain(int dv, int b1, int b2, int L) {
  return ProtographChain(dv, b1, b2, L);
}

}  // namespace scde
