#pragma once

#include "scde/de_system.hpp"
#include "scde/ensemble.hpp"

namespace scde {

// Erasure fractions of the two variable-node populations, one entry per
// position z in [1, L].
struct TwoTypeProfile {
  std::vector<double> upper;
  std::vector<double> lower;
  double epsilon = 0.0;
};

TwoTypeProfile initial_two_type_profile(const TwoTypeSpec& spec, double epsilon);
TwoTypeProfile two_type_step(const TwoTypeProfile& profile, const TwoTypeSpec& spec);

// Update kernel for the two-population chain. Each position holds an upper
// and a lower variable-node set of degree dv; a fraction alpha_upper
// (resp. alpha_lower) of their edges stays at the same check position, the
// rest moves one position up. Checks have degree 2*dv. State layout:
// [upper_1..upper_L, lower_1..lower_L].
class TwoTypeSystem final : public DeSystem {
 public:
  explicit TwoTypeSystem(TwoTypeSpec spec);

  const TwoTypeSpec& spec() const { return spec_; }

  int chain_length() const override { return spec_.L; }
  int profile_length() const override { return spec_.L; }
  int state_size() const override { return 2 * spec_.L; }
  int coupling_width() const override { return 2; }

  void init_state(std::vector<double>& state, double epsilon) const override;
  double update_range(const std::vector<double>& in, std::vector<double>& out,
                      double epsilon, int z_begin, int z_end) const override;
  double position_value(const std::vector<double>& state, int z) const override;

 private:
  TwoTypeSpec spec_;
  mutable std::vector<double> y_upper_;  // check-to-variable erasures, positions 1..L+1
  mutable std::vector<double> y_lower_;
};

}  // namespace scde
