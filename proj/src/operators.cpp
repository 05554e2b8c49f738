#include "wcp/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "wcp/errors.hpp"

namespace wcp {

namespace {

constexpr double kPowerIterRelTol = 5e-14;
constexpr std::size_t kPowerIterCap = 100000;
constexpr double kRankRelThreshold = 1e-12;
constexpr std::size_t kProbeCount = 64;

void require_cap(const FormalSeries& f, const SpaceConfig& cfg, const char* who) {
  if (f.degree_cap() != cfg.degree_cap)
    throw ConfigError(std::string(who) + ": series degree cap does not match the space");
}

// Column m of the multiplication matrix for f under the product restricted
// to support >= i. Shared by the full matrix and the approximants so their
// common columns agree bit for bit.
void fill_column(OperatorMatrix& A, const FormalSeries& f, std::size_t i, std::size_t m,
                 const SpaceConfig& cfg) {
  const std::size_t D = cfg.degree_cap;
  for (std::size_t n = m; n <= D; ++n) {
    const Complex c = f[n - m + i];
    if (c == 0.0) continue;
    A.at(n, m) = diamond_ratio(cfg.delta, n, m, i) * c;
  }
}

// Weighted realization B = W A W^-1, W = diag(beta).
std::vector<Complex> weighted_entries(const OperatorMatrix& A, const SpaceConfig& cfg) {
  const std::size_t dim = A.dim();
  std::vector<Complex> B(dim * dim);
  for (std::size_t n = 0; n < dim; ++n)
    for (std::size_t m = 0; m < dim; ++m) {
      const Complex a = A.at(n, m);
      B[n * dim + m] =
          (a == 0.0) ? Complex{0.0, 0.0}
                     : a * std::exp(cfg.beta.log_value(n) - cfg.beta.log_value(m));
    }
  return B;
}

double max_weighted_column_sum(const std::vector<Complex>& B, std::size_t dim) {
  double best = 0.0;
  for (std::size_t m = 0; m < dim; ++m) {
    double s = 0.0;
    for (std::size_t n = 0; n < dim; ++n) s += std::abs(B[n * dim + m]);
    best = std::max(best, s);
  }
  return best;
}

double max_weighted_row_sum(const std::vector<Complex>& B, std::size_t dim) {
  double best = 0.0;
  for (std::size_t n = 0; n < dim; ++n) {
    double s = 0.0;
    for (std::size_t m = 0; m < dim; ++m) s += std::abs(B[n * dim + m]);
    best = std::max(best, s);
  }
  return best;
}

void matvec(const std::vector<Complex>& B, std::size_t dim, const std::vector<Complex>& x,
            std::vector<Complex>& y) {
  for (std::size_t n = 0; n < dim; ++n) {
    Complex acc{0.0, 0.0};
    const Complex* row = &B[n * dim];
    for (std::size_t m = 0; m < dim; ++m) acc += row[m] * x[m];
    y[n] = acc;
  }
}

void matvec_adjoint(const std::vector<Complex>& B, std::size_t dim,
                    const std::vector<Complex>& x, std::vector<Complex>& y) {
  for (std::size_t m = 0; m < dim; ++m) y[m] = Complex{0.0, 0.0};
  for (std::size_t n = 0; n < dim; ++n) {
    const Complex* row = &B[n * dim];
    const Complex xn = x[n];
    for (std::size_t m = 0; m < dim; ++m) y[m] += std::conj(row[m]) * xn;
  }
}

double norm2(const std::vector<Complex>& x) {
  double s = 0.0;
  for (const Complex& v : x) s += std::norm(v);
  return std::sqrt(s);
}

double vec_pnorm(const std::vector<Complex>& x, double p) {
  double s = 0.0;
  for (const Complex& v : x) {
    const double a = std::abs(v);
    if (a > 0.0) s += std::exp(p * std::log(a));
  }
  return s == 0.0 ? 0.0 : std::pow(s, 1.0 / p);
}

// Deterministic pseudo-random doubles in [-1, 1).
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double next_double() {
    return 2.0 * (static_cast<double>(next_u64() >> 11) * 0x1.0p-53) - 1.0;
  }
};

NormBounds spectral_norm_power_iteration(const std::vector<Complex>& B, std::size_t dim) {
  // Largest singular value via power iteration on B^H B. The Rayleigh
  // quotient of a PSD matrix never exceeds its top eigenvalue, so the
  // estimate is a certified lower bound throughout.
  SplitMix64 rng(0x5eed0001u);
  std::vector<Complex> v(dim), w(dim), u(dim);
  for (auto& c : v) c = Complex{rng.next_double(), rng.next_double()};
  double vn = norm2(v);
  for (auto& c : v) c /= vn;

  double lambda = 0.0;
  for (std::size_t it = 0; it < kPowerIterCap; ++it) {
    matvec(B, dim, v, w);
    matvec_adjoint(B, dim, w, u);
    double lam = 0.0;
    for (std::size_t n = 0; n < dim; ++n)
      lam += v[n].real() * u[n].real() + v[n].imag() * u[n].imag();
    const double un = norm2(u);
    if (un == 0.0 || lam <= 0.0) return {0.0, 0.0, "power-iteration"};
    const bool done = std::abs(lam - lambda) <= kPowerIterRelTol * lam && it > 0;
    lambda = lam;
    if (done) return {std::sqrt(lambda), std::sqrt(lambda), "power-iteration"};
    for (std::size_t n = 0; n < dim; ++n) v[n] = u[n] / un;
  }
  // Did not settle: keep the Rayleigh lower bound, interpolate for an upper.
  const double upper =
      std::sqrt(max_weighted_column_sum(B, dim) * max_weighted_row_sum(B, dim));
  return {std::sqrt(lambda), std::max(upper, std::sqrt(lambda)),
          "power-iteration-unconverged+interpolation"};
}

}  // namespace

FormalSeries OperatorMatrix::apply(const FormalSeries& x) const {
  if (x.degree_cap() != degree_cap())
    throw ConfigError("OperatorMatrix::apply: dimension mismatch");
  FormalSeries y(degree_cap());
  for (std::size_t n = 0; n < dim_; ++n) {
    Complex acc{0.0, 0.0};
    for (std::size_t m = 0; m < dim_; ++m) acc += entries_[n * dim_ + m] * x[m];
    y[n] = acc;
  }
  return y;
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.dim() != b.dim()) throw ConfigError("matrix difference: dimension mismatch");
  OperatorMatrix out(a.degree_cap());
  for (std::size_t n = 0; n < a.dim(); ++n)
    for (std::size_t m = 0; m < a.dim(); ++m) out.at(n, m) = a.at(n, m) - b.at(n, m);
  return out;
}

OperatorMatrix mult_matrix(const FormalSeries& f, const SpaceConfig& cfg) {
  return mult_matrix_i(f, 0, cfg);
}

OperatorMatrix mult_matrix_i(const FormalSeries& f, std::size_t i, const SpaceConfig& cfg) {
  require_cap(f, cfg, "mult_matrix");
  if (i > cfg.degree_cap) throw ConfigError("mult_matrix: i exceeds the truncation degree");
  for (std::size_t j = 0; j < i; ++j)
    if (f[j] != 0.0) throw SupportError("mult_matrix: symbol not supported on degrees >= i");
  OperatorMatrix A(cfg.degree_cap);
  for (std::size_t m = i; m <= cfg.degree_cap; ++m) fill_column(A, f, i, m, cfg);
  return A;
}

OperatorMatrix shift_matrix(std::size_t N, const SpaceConfig& cfg) {
  if (N > cfg.degree_cap) return OperatorMatrix(cfg.degree_cap);
  const double c = std::exp(cfg.delta.log_value(N) -
                            static_cast<double>(N) * cfg.delta.log_value(1));
  return mult_matrix(FormalSeries::monomial(N, Complex{c, 0.0}, cfg.degree_cap), cfg);
}

FormalSeries shift_apply(const FormalSeries& f, std::size_t N, const SpaceConfig& cfg) {
  require_cap(f, cfg, "shift_apply");
  if (N == 0) return f;
  const std::size_t D = cfg.degree_cap;
  FormalSeries out(D);
  const double ld1 = cfg.delta.log_value(1);
  for (std::size_t n = 0; n + N <= D; ++n) {
    if (f[n] == 0.0) continue;
    out[n + N] = std::exp(cfg.delta.log_value(n + N) - cfg.delta.log_value(n) -
                          static_cast<double>(N) * ld1) *
                 f[n];
  }
  return out;
}

OperatorMatrix k_m_matrix(const FormalSeries& f, std::size_t M, std::size_t i,
                          const SpaceConfig& cfg) {
  require_cap(f, cfg, "k_m_matrix");
  if (i > cfg.degree_cap) throw ConfigError("k_m_matrix: i exceeds the truncation degree");
  for (std::size_t j = 0; j < i; ++j)
    if (f[j] != 0.0) throw SupportError("k_m_matrix: symbol not supported on degrees >= i");
  OperatorMatrix A(cfg.degree_cap);
  const std::size_t last = std::min(i + M, cfg.degree_cap);
  for (std::size_t m = i; m <= last; ++m) fill_column(A, f, i, m, cfg);
  return A;
}

NormBounds induced_norm_bounds(const OperatorMatrix& A, const SpaceConfig& cfg) {
  if (A.degree_cap() != cfg.degree_cap)
    throw ConfigError("induced_norm_bounds: matrix does not match the space");
  const std::size_t dim = A.dim();
  const std::vector<Complex> B = weighted_entries(A, cfg);

  if (cfg.p == 1.0) {
    const double v = max_weighted_column_sum(B, dim);
    return {v, v, "exact-l1-column-sums"};
  }
  if (cfg.p == 2.0) return spectral_norm_power_iteration(B, dim);

  // General p: certified lower bound from basis vectors plus random probes,
  // upper bound by Riesz-Thorin interpolation between the 1- and inf-norms.
  double lower = 0.0;
  for (std::size_t m = 0; m < dim; ++m) {
    double s = 0.0;
    for (std::size_t n = 0; n < dim; ++n) {
      const double a = std::abs(B[n * dim + m]);
      if (a > 0.0) s += std::exp(cfg.p * std::log(a));
    }
    if (s > 0.0) lower = std::max(lower, std::pow(s, 1.0 / cfg.p));
  }
  SplitMix64 rng(0x5eed0002u);
  std::vector<Complex> x(dim), y(dim);
  for (std::size_t probe = 0; probe < kProbeCount; ++probe) {
    for (auto& c : x) c = Complex{rng.next_double(), rng.next_double()};
    const double xn = vec_pnorm(x, cfg.p);
    if (xn == 0.0) continue;
    matvec(B, dim, x, y);
    lower = std::max(lower, vec_pnorm(y, cfg.p) / xn);
  }
  const double n1 = max_weighted_column_sum(B, dim);
  const double ninf = max_weighted_row_sum(B, dim);
  double upper = 0.0;
  if (n1 > 0.0 && ninf > 0.0)
    upper = std::exp(std::log(n1) / cfg.p + (1.0 - 1.0 / cfg.p) * std::log(ninf));
  upper = std::max(upper, lower);
  return {lower, upper, "probes+riesz-thorin"};
}

std::size_t numerical_rank(const OperatorMatrix& A) {
  const std::size_t dim = A.dim();
  std::vector<Complex> W(dim * dim);
  std::vector<double> col_scale(dim, 0.0);
  for (std::size_t n = 0; n < dim; ++n)
    for (std::size_t m = 0; m < dim; ++m) {
      W[n * dim + m] = A.at(n, m);
      col_scale[m] = std::max(col_scale[m], std::abs(A.at(n, m)));
    }

  std::size_t rank = 0;
  for (std::size_t col = 0; col < dim && rank < dim; ++col) {
    if (col_scale[col] == 0.0) continue;
    std::size_t pivot = rank;
    double best = 0.0;
    for (std::size_t r = rank; r < dim; ++r) {
      const double a = std::abs(W[r * dim + col]);
      if (a > best) {
        best = a;
        pivot = r;
      }
    }
    if (best <= kRankRelThreshold * col_scale[col]) continue;
    if (pivot != rank)
      for (std::size_t m = 0; m < dim; ++m) std::swap(W[pivot * dim + m], W[rank * dim + m]);
    const Complex p = W[rank * dim + col];
    for (std::size_t r = rank + 1; r < dim; ++r) {
      const Complex factor = W[r * dim + col] / p;
      if (factor == 0.0) continue;
      for (std::size_t m = col; m < dim; ++m) W[r * dim + m] -= factor * W[rank * dim + m];
    }
    ++rank;
  }
  return rank;
}

namespace {

// sum_{n=i+1}^{i+M} sum_{m>=i+M+1} of the weighted tail ratio
// delta_{n+m-i} beta(n+m-i) / (delta_n delta_m beta(n) beta(m)),
// with the same contribution-decay convergence verdict as the double tail.
ConditionReport head_cross_tail_sum(const WeightSequence& beta, const WeightSequence& delta,
                                    std::size_t i, std::size_t M, const ScanPolicy& scan) {
  const std::size_t end = std::min({scan.n_max, beta.n_max(), delta.n_max()});
  ConditionReport rep;
  std::vector<std::size_t> idx;
  std::vector<double> contrib;
  double total = 0.0;
  for (std::size_t m = i + M + 1; m <= end; ++m) {
    double c = 0.0;
    for (std::size_t n = i + 1; n <= i + M && n + m - i <= end; ++n) {
      c += std::exp(delta.log_value(n + m - i) + beta.log_value(n + m - i) -
                    delta.log_value(n) - delta.log_value(m) - beta.log_value(n) -
                    beta.log_value(m));
    }
    total += c;
    rep.scanned = m;
    idx.push_back(m);
    contrib.push_back(c);
    if (!std::isfinite(total) || total > scan.divergence_threshold) {
      rep.diverged = true;
      break;
    }
  }
  rep.value = total;
  rep.witness = rep.scanned;
  if (!rep.diverged && contrib.size() >= scan.window) {
    const std::size_t w = scan.window;
    bool strict = true, positive = true;
    for (std::size_t j = contrib.size() - w; j < contrib.size(); ++j) {
      if (contrib[j] > 1e-12 * total) strict = false;
      if (!(contrib[j] > 0.0)) positive = false;
    }
    if (strict) {
      rep.converged = true;
    } else if (positive) {
      double mx = 0.0, my = 0.0;
      const std::size_t first = contrib.size() - w;
      for (std::size_t j = first; j < contrib.size(); ++j) {
        mx += std::log(static_cast<double>(idx[j]));
        my += std::log(contrib[j]);
      }
      mx /= static_cast<double>(w);
      my /= static_cast<double>(w);
      double num = 0.0, den = 0.0;
      for (std::size_t j = first; j < contrib.size(); ++j) {
        const double dx = std::log(static_cast<double>(idx[j])) - mx;
        num += dx * (std::log(contrib[j]) - my);
        den += dx * dx;
      }
      rep.converged = (num / den) <= -1.25;
    }
  }
  return rep;
}

}  // namespace

std::vector<CompactnessRow> compactness_profile(const FormalSeries& f, std::size_t i,
                                                const std::vector<std::size_t>& Ms,
                                                const SpaceConfig& cfg,
                                                const ScanPolicy& scan) {
  require_cap(f, cfg, "compactness_profile");
  for (std::size_t j = 0; j <= i && j <= cfg.degree_cap; ++j)
    if (f[j] != 0.0)
      throw SupportError("compactness_profile: needs f(j) = 0 for j <= " + std::to_string(i));

  const OperatorMatrix full = mult_matrix_i(f, i, cfg);
  const double f_norm = lp_norm(f, cfg);
  ConditionReport holder;
  if (cfg.p > 1.0) holder = holder_constant(cfg.beta, cfg.delta, cfg.conjugate_q(), i, scan);

  std::vector<CompactnessRow> rows;
  rows.reserve(Ms.size());
  for (const std::size_t M : Ms) {
    CompactnessRow row;
    row.M = M;
    row.measured = induced_norm_bounds(full - k_m_matrix(f, M, i, cfg), cfg);
    bool conv = true;
    if (cfg.p > 1.0) {
      conv = holder.converged;
      const double tail_norm = lp_norm(tail(f, std::min(M + i, cfg.degree_cap + 1)), cfg);
      double b_sum = 0.0;
      for (std::size_t k = 1; k <= M; ++k) {
        const ConditionReport b = tail_constant(cfg.beta, cfg.delta, M, k, i, scan);
        conv = conv && b.converged;
        b_sum += b.value;
      }
      row.lemma_bound =
          std::pow(holder.value, 1.0 / cfg.conjugate_q()) * tail_norm + f_norm * b_sum;
    } else {
      const ConditionReport dbl = p1_tail_sum(cfg.beta, cfg.delta, i + M, i, scan);
      const ConditionReport cross = head_cross_tail_sum(cfg.beta, cfg.delta, i, M, scan);
      conv = dbl.converged && cross.converged;
      row.lemma_bound = f_norm * (dbl.value + cross.value);
    }
    row.bound_converged = conv;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace wcp
