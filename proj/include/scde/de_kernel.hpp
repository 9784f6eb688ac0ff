#pragma once

#include "scde/de_system.hpp"
#include "scde/ensemble.hpp"

namespace scde {

// Erasure fraction per position for a single-type chain. values[k] belongs to
// position z = k+1 and the vector spans z in [1, L+w-1]; the last w-1
// positions only exist to carry the terminated tail (they stay 0 under the
// update). epsilon is the channel parameter the profile evolved under.
struct ErasureProfile {
  std::vector<double> values;
  double epsilon = 0.0;
};

ErasureProfile initial_profile(const CoupledEnsembleSpec& spec, double epsilon);

// One synchronous update of the whole chain. Entries must lie in [0,1] and
// the vector length must match the ensemble.
ErasureProfile de_step(const ErasureProfile& profile, const CoupledEnsembleSpec& spec);

// Update kernel for the (dv, dc, nu, L) chain. State is the profile vector
// itself (length L+w-1).
class SingleTypeSystem final : public DeSystem {
 public:
  explicit SingleTypeSystem(CoupledEnsembleSpec spec);

  const CoupledEnsembleSpec& spec() const { return spec_; }

  int chain_length() const override { return spec_.L; }
  int profile_length() const override { return spec_.L + spec_.width() - 1; }
  int state_size() const override { return profile_length(); }
  int coupling_width() const override { return spec_.width(); }

  void init_state(std::vector<double>& state, double epsilon) const override;
  double update_range(const std::vector<double>& in, std::vector<double>& out,
                      double epsilon, int z_begin, int z_end) const override;
  double position_value(const std::vector<double>& state, int z) const override;

 private:
  CoupledEnsembleSpec spec_;
  mutable std::vector<double> cn_avg_;
};

}  // namespace scde
