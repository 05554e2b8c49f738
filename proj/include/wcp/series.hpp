#pragma once
// Truncated formal power series and the weighted sequence-space structure
// on them. A series is a dense complex coefficient vector c(0..D); all
// products in the algebra module respect the grading, so coefficient n of
// any result depends only on the inputs' coefficients 0..n.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "wcp/weights.hpp"

namespace wcp {

using Complex = std::complex<double>;

class FormalSeries {
 public:
  // Zero series truncated at z^degree_cap.
  explicit FormalSeries(std::size_t degree_cap)
      : coeffs_(degree_cap + 1, Complex{0.0, 0.0}) {}
  // Takes ownership; degree_cap = coeffs.size() - 1. Must be non-empty.
  explicit FormalSeries(std::vector<Complex> coeffs);

  static FormalSeries constant(Complex c, std::size_t degree_cap);
  static FormalSeries monomial(std::size_t degree, Complex c, std::size_t degree_cap);

  std::size_t degree_cap() const { return coeffs_.size() - 1; }
  Complex& operator[](std::size_t n) { return coeffs_[n]; }
  const Complex& operator[](std::size_t n) const { return coeffs_[n]; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }

  bool operator==(const FormalSeries& other) const { return coeffs_ == other.coeffs_; }

 private:
  std::vector<Complex> coeffs_;
};

// Ambient truncated algebra: exponent p in [1, inf), norm weights beta,
// product weights delta, truncation degree D <= both weights' n_max.
struct SpaceConfig {
  double p;
  WeightSequence beta;
  WeightSequence delta;
  std::size_t degree_cap;

  SpaceConfig(double p, WeightSequence beta, WeightSequence delta, std::size_t degree_cap);

  // Conjugate exponent q = p / (p - 1); only defined for p > 1.
  double conjugate_q() const;
};

// (sum_{n=0}^D |c(n)|^p beta(n)^p)^(1/p), accumulated in ascending n with
// compensated summation; terms go through log space so factorial-type
// weights do not overflow intermediates.
double lp_norm(const FormalSeries& f, const SpaceConfig& cfg);

// Zeroes the coefficients below `from`; tail(f, 0) = f, tail(f, D+1) = 0.
FormalSeries tail(const FormalSeries& f, std::size_t from);

// Least n with c(n) != 0 (exact test), or nullopt for the zero series.
std::optional<std::size_t> min_support(const FormalSeries& f);

}  // namespace wcp
