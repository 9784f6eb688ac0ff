#pragma once

namespace scde {

// x^n for small non-negative integer n, by squaring. The update kernels call
// this millions of times, so it must not go through std::pow.
inline double ipow(double x, int n) {
  double r = 1.0;
  double b = x;
  while (n > 0) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

}  // namespace scde
