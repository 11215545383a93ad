#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace musielak {

inline constexpr int kMaxDim = 2;

/// A point of R^N, N <= 2. Unused trailing coordinates are zero.
using Point = std::array<double, kMaxDim>;

inline double distance(const Point& a, const Point& b, int dim) {
  double acc = 0.0;
  for (int k = 0; k < dim; ++k) {
    const double d = a[k] - b[k];
    acc += d * d;
  }
  return std::sqrt(acc);
}

inline double norm(const Point& a, int dim) { return distance(a, Point{}, dim); }

}  // namespace musielak
