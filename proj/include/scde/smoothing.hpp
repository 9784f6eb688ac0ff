#pragma once

#include <vector>

namespace scde {

// Probability vector [w_0, ..., w_{width-1}] describing how the edges of a
// variable node at position z spread over check groups z, z+1, ..., z+width-1.
// Entries may be zero; they must be non-negative and sum to one.
class SmoothingDistribution {
 public:
  explicit SmoothingDistribution(std::vector<double> weights);

  static SmoothingDistribution uniform(int width);
  // Width-2 distribution [alpha, 1-alpha]; alpha is the fraction of edges
  // kept at the same position.
  static SmoothingDistribution unit_memory(double alpha);

  int width() const { return static_cast<int>(weights_.size()); }
  double weight(int i) const { return weights_[static_cast<unsigned>(i)]; }
  const std::vector<double>& weights() const { return weights_; }

  SmoothingDistribution reversed() const;

  bool operator==(const SmoothingDistribution&) const = default;

 private:
  std::vector<double> weights_;
};

}  // namespace scde
