#pragma once

#include <cstddef>
#include <span>

namespace egap {

// Fixed-order pairwise summation. Deterministic regardless of how the terms
// were produced, and more accurate than a running sum.
inline double pairwise_sum(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

}  // namespace egap
