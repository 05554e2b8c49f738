#include "wcp/oracle.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "wcp/errors.hpp"

namespace wcp::oracle {

namespace {

// Direct division where the stored values behave, log route otherwise.
double ratio(const WeightSequence& delta, std::size_t num, std::size_t d1, std::size_t d2) {
  const double a = delta.value(num), b = delta.value(d1), c = delta.value(d2);
  if (std::isnormal(a) && std::isnormal(b) && std::isnormal(c)) {
    const double r = a / (b * c);
    if (std::isfinite(r) && r > 0.0) return r;
  }
  return std::exp(delta.log_value(num) - delta.log_value(d1) - delta.log_value(d2));
}

// Pascal triangle in 64-bit integers; row n <= 66 stays below 2^63.
constexpr std::size_t kExactBinomialRows = 67;

double binomial(std::size_t n, std::size_t k) {
  static const std::vector<std::vector<std::uint64_t>> table = [] {
    std::vector<std::vector<std::uint64_t>> t(kExactBinomialRows);
    for (std::size_t r = 0; r < kExactBinomialRows; ++r) {
      t[r].resize(r + 1);
      t[r][0] = t[r][r] = 1;
      for (std::size_t c = 1; c < r; ++c) t[r][c] = t[r - 1][c - 1] + t[r - 1][c];
    }
    return t;
  }();
  if (n < kExactBinomialRows) return static_cast<double>(table[n][k]);
  return std::exp(std::lgamma(static_cast<double>(n + 1)) -
                  std::lgamma(static_cast<double>(k + 1)) -
                  std::lgamma(static_cast<double>(n - k + 1)));
}

}  // namespace

FormalSeries brute_diamond(const FormalSeries& f, const FormalSeries& g,
                           const WeightSequence& delta, std::size_t degree_cap) {
  FormalSeries out(degree_cap);
  for (std::size_t n = 0; n <= degree_cap && n <= f.degree_cap(); ++n) {
    for (std::size_t m = 0; n + m <= degree_cap; ++m) {
      if (m > g.degree_cap()) break;
      const Complex term = f[n] * g[m];
      if (term == 0.0) continue;
      out[n + m] += ratio(delta, n + m, n, m) * term;
    }
  }
  return out;
}

FormalSeries brute_diamond_i(const FormalSeries& f, const FormalSeries& g, std::size_t i,
                             const WeightSequence& delta, std::size_t degree_cap) {
  for (std::size_t j = 0; j < i; ++j)
    if (f[j] != 0.0 || g[j] != 0.0)
      throw SupportError("brute_diamond_i: inputs must be supported on degrees >= i");
  FormalSeries out(degree_cap);
  for (std::size_t n = i; n <= f.degree_cap(); ++n)
    for (std::size_t m = i; m <= g.degree_cap() && n + m - i <= degree_cap; ++m) {
      const Complex term = f[n] * g[m];
      if (term == 0.0) continue;
      out[n + m - i] += ratio(delta, n + m - i, n, m) * term;
    }
  return out;
}

FormalSeries binomial_convolution(const FormalSeries& f, const FormalSeries& g,
                                  std::size_t degree_cap) {
  FormalSeries out(degree_cap);
  for (std::size_t n = 0; n <= degree_cap; ++n) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k <= n; ++k) {
      if (k > f.degree_cap() || n - k > g.degree_cap()) continue;
      acc += binomial(n, k) * (f[k] * g[n - k]);
    }
    out[n] = acc;
  }
  return out;
}

FormalSeries cauchy_convolution(const FormalSeries& f, const FormalSeries& g,
                                std::size_t degree_cap) {
  FormalSeries out(degree_cap);
  for (std::size_t n = 0; n <= degree_cap; ++n) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k <= n; ++k) {
      if (k > f.degree_cap() || n - k > g.degree_cap()) continue;
      if (f[k] == 0.0) continue;
      acc += f[k] * g[n - k];
    }
    out[n] = acc;
  }
  return out;
}

FormalSeries brute_invert(const FormalSeries& f, const WeightSequence& delta,
                          std::size_t degree_cap) {
  if (f[0] == 0.0) throw NotInvertible("brute_invert: zero diagonal");
  FormalSeries g(degree_cap);
  // Row n of the triangular system: sum_{k<=n} ratio(n, n-k, k) f(n-k) g(k) = [n == 0].
  for (std::size_t n = 0; n <= degree_cap; ++n) {
    Complex rhs = (n == 0) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      if (n - k > f.degree_cap()) continue;
      rhs -= ratio(delta, n, n - k, k) * (f[n - k] * g[k]);
    }
    g[n] = rhs / f[0];
  }
  return g;
}

}  // namespace wcp::oracle
