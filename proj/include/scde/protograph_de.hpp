#pragma once

#include "scde/de_system.hpp"
#include "scde/protograph.hpp"

namespace scde {

// Per-bundle variable-to-check erasures for one protograph chain. Each
// position carries four slots, indexed by bundle kind:
//   0: first VN -> same-position check     (multiplicity b1)
//   1: first VN -> next-position check     (multiplicity dv-b1)
//   2: second VN -> same-position check    (multiplicity b2)
//   3: second VN -> next-position check    (multiplicity dv-b2)
// Slots of zero-multiplicity kinds stay 0.
struct BundleProfile {
  std::vector<double> values;  // 4 * L entries, position-major
  double epsilon = 0.0;
};

BundleProfile initial_bundle_profile(const ProtographChain& chain, double epsilon);
BundleProfile protograph_step(const BundleProfile& profile, const ProtographChain& chain);

// Multi-edge update kernel for the chained protograph. Internally the two
// variable nodes of a segment are stored with the smaller split first, so
// (b1, b2) and (b2, b1) run bit-identically; the free functions above
// translate back to the caller's orientation.
class ProtographSystem final : public DeSystem {
 public:
  explicit ProtographSystem(const ProtographChain& chain);

  int chain_length() const override { return L_; }
  int profile_length() const override { return L_; }
  int state_size() const override { return 4 * L_; }
  int coupling_width() const override { return 2; }

  bool swapped() const { return swapped_; }

  void init_state(std::vector<double>& state, double epsilon) const override;
  double update_range(const std::vector<double>& in, std::vector<double>& out,
                      double epsilon, int z_begin, int z_end) const override;
  double position_value(const std::vector<double>& state, int z) const override;

 private:
  int dv_;
  int b1_;
  int b2_;
  int L_;
  bool swapped_;
  mutable std::vector<double> y_;  // 4 * (L+1) check-to-variable erasures
};

}  // namespace scde
