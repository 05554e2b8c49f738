#pragma once
// Brute-force reference implementations used by property tests and for
// derived expected values. These deliberately avoid the production
// kernels: different traversal orders, direct division instead of log
// ratios where representable, exact integer binomials. They trade speed
// for transparency and are only meant for small truncation degrees.

#include "wcp/series.hpp"

namespace wcp::oracle {

// Literal double sum over (n, m) pairs in lexicographic order, folding
// delta_{n+m}/(delta_n delta_m) f(n) g(m) into degree n+m <= degree_cap.
FormalSeries brute_diamond(const FormalSeries& f, const FormalSeries& g,
                           const WeightSequence& delta, std::size_t degree_cap);

// Restricted-product analogue: pairs n, m >= i folded into degree n+m-i
// with weight delta_{n+m-i}/(delta_n delta_m).
FormalSeries brute_diamond_i(const FormalSeries& f, const FormalSeries& g, std::size_t i,
                             const WeightSequence& delta, std::size_t degree_cap);

// coefficient n = sum_k C(n, k) f(k) g(n-k), with exact integer binomials
// up to n = 66 and log-space binomials beyond.
FormalSeries binomial_convolution(const FormalSeries& f, const FormalSeries& g,
                                  std::size_t degree_cap);

// Plain convolution, ascending k.
FormalSeries cauchy_convolution(const FormalSeries& f, const FormalSeries& g,
                                std::size_t degree_cap);

// Solves the lower-triangular system of the multiplication matrix by
// forward substitution. Throws NotInvertible when f(0) = 0.
FormalSeries brute_invert(const FormalSeries& f, const WeightSequence& delta,
                          std::size_t degree_cap);

}  // namespace wcp::oracle
