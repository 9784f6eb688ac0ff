#include "scde/smoothing.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace scde {

SmoothingDistribution::SmoothingDistribution(std::vector<double> weights)
    : weights_(std::move(weights)) {
  if (weights_.size() < 2) {
    throw std::invalid_argument("smoothing distribution needs width >= 2");
  }
  double sum = 0.0;
  for (double v : weights_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument("smoothing weights must be finite and non-negative");
    }
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("smoothing weights must sum to 1, got " + std::to_string(sum));
  }
}

SmoothingDistribution SmoothingDistribution::uniform(int width) {
  if (width < 2) throw std::invalid_argument("uniform smoothing needs width >= 2");
  std::vector<double> v(static_cast<unsigned>(width), 1.0 / width);
  return SmoothingDistribution(std::move(v));
}

SmoothingDistribution SmoothingDistribution::unit_memory(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("unit-memory weight must lie in [0,1]");
  }
  return SmoothingDistribution({alpha, 1.0 - alpha});
}

SmoothingDistribution SmoothingDistribution::reversed() const {
  std::vector<double> v(weights_.rbegin(), weights_.rend());
  return SmoothingDistribution(std::move(v));
}

}  // namespace scde
