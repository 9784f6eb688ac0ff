#pragma once

#include <vector>

namespace scde {

// Common update contract for the density-evolution systems (single-type,
// two-type, protograph). State layout is system-defined; spatial positions
// are 1-based. A system instance owns per-run scratch buffers, so one
// instance must not serve two concurrent runs; copies are cheap.
class DeSystem {
 public:
  virtual ~DeSystem() = default;

  // Number of positions the update may change.
  virtual int chain_length() const = 0;
  // Number of positions carrying stored values (>= chain_length when the
  // state keeps a terminated tail).
  virtual int profile_length() const = 0;
  virtual int state_size() const = 0;
  virtual int coupling_width() const = 0;

  virtual void init_state(std::vector<double>& state, double epsilon) const = 0;

  // One synchronous update of positions z in [z_begin, z_end]; all other
  // entries of `out` are copied from `in`. Reads always see the full `in`
  // state. Returns the largest position value of `out`.
  virtual double update_range(const std::vector<double>& in, std::vector<double>& out,
                              double epsilon, int z_begin, int z_end) const = 0;

  // Erasure value attributed to position z (worst message type there).
  virtual double position_value(const std::vector<double>& state, int z) const = 0;

  double step(const std::vector<double>& in, std::vector<double>& out, double epsilon) const {
    return update_range(in, out, epsilon, 1, chain_length());
  }

  void extract_profile(const std::vector<double>& state, std::vector<double>& out) const;
  double max_value(const std::vector<double>& state) const;
};

}  // namespace scde
