#pragma once
// Shared test helpers: deterministic RNG, random series, error metrics.

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "wcp/series.hpp"

namespace wcp::testing {

// Deterministic across platforms, unlike <random> distributions.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }  // [0,1)
  double symmetric() { return 2.0 * uniform() - 1.0; }                            // [-1,1)
};

inline FormalSeries random_series(Rng& rng, std::size_t degree_cap) {
  FormalSeries f(degree_cap);
  for (std::size_t n = 0; n <= degree_cap; ++n)
    f[n] = Complex{rng.symmetric(), rng.symmetric()};
  return f;
}

// Coefficients in the open first quadrant, bounded away from zero; sums of
// such terms cannot cancel, so per-coefficient relative comparisons stay
// well conditioned.
inline FormalSeries random_positive_series(Rng& rng, std::size_t degree_cap) {
  FormalSeries f(degree_cap);
  for (std::size_t n = 0; n <= degree_cap; ++n)
    f[n] = Complex{0.2 + 0.8 * rng.uniform(), 0.2 + 0.8 * rng.uniform()};
  return f;
}

// max_n |a_n - b_n| relative to the largest coefficient of either side.
inline double normwise_error(const FormalSeries& a, const FormalSeries& b) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t n = 0; n <= a.degree_cap(); ++n) {
    diff = std::max(diff, std::abs(a[n] - b[n]));
    scale = std::max({scale, std::abs(a[n]), std::abs(b[n])});
  }
  return scale == 0.0 ? diff : diff / scale;
}

// max_n |a_n - b_n| / max(|a_n|, |b_n|); coefficients equal to zero on both
// sides contribute nothing.
inline double per_coefficient_error(const FormalSeries& a, const FormalSeries& b) {
  double worst = 0.0;
  for (std::size_t n = 0; n <= a.degree_cap(); ++n) {
    const double scale = std::max(std::abs(a[n]), std::abs(b[n]));
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(a[n] - b[n]) / scale);
  }
  return worst;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

}  // namespace wcp::testing
