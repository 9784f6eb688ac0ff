#include "scde/de_system.hpp"

#include <algorithm>

namespace scde {

void DeSystem::extract_profile(const std::vector<double>& state, std::vector<double>& out) const {
  const int n = profile_length();
  out.resize(static_cast<unsigned>(n));
  for (int z = 1; z <= n; ++z) {
    out[static_cast<unsigned>(z - 1)] = position_value(state, z);
  }
}

double DeSystem::max_value(const std::vector<double>& state) const {
  double m = 0.0;
  const int n = profile_length();
  for (int z = 1; z <= n; ++z) m = std::max(m, position_value(state, z));
  return m;
}

}  // namespace scde
