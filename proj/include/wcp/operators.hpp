#pragma once
// Matrix realizations of product-multiplication and shift operators on the
// truncated space, finite-rank approximants, induced-norm estimation on
// the weighted coefficient space, and compactness diagnostics.

#include <string>
#include <vector>

#include "wcp/series.hpp"

namespace wcp {

// Dense (D+1) x (D+1) complex matrix in the monomial coefficient basis.
// Multiplication matrices are lower triangular by the grading.
class OperatorMatrix {
 public:
  explicit OperatorMatrix(std::size_t degree_cap)
      : dim_(degree_cap + 1), entries_(dim_ * dim_, Complex{0.0, 0.0}) {}

  std::size_t degree_cap() const { return dim_ - 1; }
  std::size_t dim() const { return dim_; }
  Complex& at(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const Complex& at(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

  FormalSeries apply(const FormalSeries& x) const;

  bool operator==(const OperatorMatrix& other) const { return entries_ == other.entries_; }

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
};

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);

// Lower / upper estimates of an induced operator norm, with a tag naming
// the method that produced them. lower is always a certified lower bound.
struct NormBounds {
  double lower = 0.0;
  double upper = 0.0;
  std::string method_tag;
};

// Matrix of g -> f <> g: A(n,m) = diamond_ratio(delta,n,m,0) * f(n-m) for
// n >= m, zero above the diagonal.
OperatorMatrix mult_matrix(const FormalSeries& f, const SpaceConfig& cfg);

// Matrix of the restricted product g -> f <>_i g on series supported >= i;
// columns below i are zero. Requires f supported >= i.
OperatorMatrix mult_matrix_i(const FormalSeries& f, std::size_t i, const SpaceConfig& cfg);

// Matrix of the N-fold shift, i.e. multiplication by delta_N/delta_1^N z^N.
OperatorMatrix shift_matrix(std::size_t N, const SpaceConfig& cfg);

// N-fold shift applied to a series: coefficient n+N of the output is
// delta_{n+N} / (delta_n delta_1^N) * f(n); degrees beyond the cap drop.
FormalSeries shift_apply(const FormalSeries& f, std::size_t N, const SpaceConfig& cfg);

// Finite-rank approximant keeping the full product action of f on input
// degrees i..i+M and zeroing all later columns. Rank <= i+M+1.
OperatorMatrix k_m_matrix(const FormalSeries& f, std::size_t M, std::size_t i,
                          const SpaceConfig& cfg);

// Induced norm of A acting on the weighted space, i.e. of W A W^-1 with
// W = diag(beta) in the plain p-norm. p = 1 is exact (max weighted column
// sum); p = 2 runs power iteration on the Gram matrix; other p report a
// probe-based lower bound and a Riesz-Thorin interpolation upper bound.
NormBounds induced_norm_bounds(const OperatorMatrix& A, const SpaceConfig& cfg);

// Numerical rank via row elimination with a per-column relative threshold
// of 1e-12 times that column's largest entry.
std::size_t numerical_rank(const OperatorMatrix& A);

struct CompactnessRow {
  std::size_t M = 0;
  NormBounds measured;        // norm of (multiplication matrix - K_M)
  double lemma_bound = 0.0;   // tail/condition-constant bound on the same norm
  bool bound_converged = false;  // all constants in the bound stabilized
};

// For each M in Ms: the measured approximation error of K_M against the
// full multiplication matrix, next to its condition-constant bound.
// Requires f(j) = 0 for j <= i. Non-converged constants flag the row
// rather than failing.
std::vector<CompactnessRow> compactness_profile(const FormalSeries& f, std::size_t i,
                                                const std::vector<std::size_t>& Ms,
                                                const SpaceConfig& cfg,
                                                const ScanPolicy& scan);

}  // namespace wcp
