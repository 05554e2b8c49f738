#pragma once
// Weight families and the scalar condition constants that control the
// weighted Cauchy product: Hoelder sums, tail-gain sups, double-tail
// series and shift-operator norms.
//
// Every ratio of weights is evaluated through a table of logarithms so
// factorial-type families stay usable far past the point where the raw
// values over- or underflow a double. Sups and series over infinite index
// sets are estimated by finite scans that report a convergence verdict
// instead of pretending exactness.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace wcp {

// Positive weights w(0..n_max) with w(0) = 1. The log table is the
// authoritative representation; value(n) may round to 0 or +inf for
// extreme families while log_value(n) stays finite.
class WeightSequence {
 public:
  static WeightSequence from_family(std::string_view spec, std::size_t n_max);
  static WeightSequence from_values(std::vector<double> values, std::string tag);
  static WeightSequence from_log_values(std::vector<double> log_values, std::string tag);

  std::size_t n_max() const { return log_.size() - 1; }
  double value(std::size_t n) const { return values_[n]; }
  double log_value(std::size_t n) const { return log_[n]; }
  const std::string& family_tag() const { return tag_; }

 private:
  WeightSequence(std::vector<double> values, std::vector<double> logs, std::string tag);

  std::vector<double> values_;
  std::vector<double> log_;
  std::string tag_;
};

// Families: "one", "poly:a" with w(n) = (n+1)^a, "geometric:r" with
// w(n) = r^n (r > 0), "factorial", "invfactorial", "custom:<path>" with one
// decimal per line (line n = w(n), line 0 must be 1.0).
WeightSequence make_weight_family(std::string_view spec, std::size_t n_max);

// delta_n / (delta_k * delta_{n-k+i}) for i <= k <= n, evaluated in log
// space. The boundary cases k == i and k == n cancel to 1/delta_i; for
// i == 0 they come out as exactly 1.0.
double diamond_ratio(const WeightSequence& delta, std::size_t n, std::size_t k,
                     std::size_t i = 0);

// beta~(n) = delta_{n+1} beta(n) / (delta_n delta_1), defined for
// n <= n_max - 1. beta~(0) = 1 exactly, so the result is a valid family.
WeightSequence beta_tilde(const WeightSequence& beta, const WeightSequence& delta);

// Finite-scan policy for the sup/series estimators.
struct ScanPolicy {
  std::size_t n_max = 2048;            // scan ceiling
  std::size_t window = 16;             // trailing stabilization length
  double divergence_threshold = 1e12;  // running values beyond this are divergent
};

// Result of a sup or series scan. `value` is a lower bound of the true
// constant by construction (monotone accumulation). `converged` requires
// the running estimate unchanged within relative 1e-12 over the trailing
// window; for series it additionally accepts contributions whose log-log
// decay rate certifies summability. `witness` is the argmax for sups and
// the last accumulated index for series; on divergence it is the index
// where divergence was detected.
struct ConditionReport {
  double value = 0.0;
  bool converged = false;
  std::size_t witness = 0;
  std::size_t scanned = 0;
  bool diverged = false;  // threshold hit or monotone growth through the window
};

// sup_{n>=i} sum_{k=i}^n (delta_n beta(n) /
//   (delta_k delta_{n-k+i} beta(k) beta(n-k+i)))^q, q > 1.
ConditionReport holder_constant(const WeightSequence& beta, const WeightSequence& delta,
                                double q, std::size_t i, const ScanPolicy& scan);

// sup_{n>=M+i+1} delta_{n+k} beta(n+k) / (delta_n delta_{k+i} beta(n) beta(k+i)),
// k >= 1.
ConditionReport tail_constant(const WeightSequence& beta, const WeightSequence& delta,
                              std::size_t M, std::size_t k, std::size_t i,
                              const ScanPolicy& scan);

// sum_{n,m >= N+1} delta_{n+m-i} beta(n+m-i) / (delta_n delta_m beta(n) beta(m)),
// accumulated by anti-diagonal s = n+m ascending. Requires N >= i.
ConditionReport p1_tail_sum(const WeightSequence& beta, const WeightSequence& delta,
                            std::size_t N, std::size_t i, const ScanPolicy& scan);

// sup_{n>=0} beta(n+N) delta_{n+N} / (beta(n) delta_n delta_1^N), N >= 1.
// Equals the induced norm of the N-fold shift on the weighted space.
ConditionReport shift_norm_constant(const WeightSequence& beta, const WeightSequence& delta,
                                    std::size_t N, const ScanPolicy& scan);

// Multiplicative constant for the p = 1 product bound:
//   2 sum_{k=0}^N delta_1^k / (beta(k) delta_k) * |shift^k| + double tail,
// with the k = 0 shift norm taken as 1 (the identity). Throws NotConverged
// if the double tail or any shift constant fails to stabilize.
double p1_product_bound(const WeightSequence& beta, const WeightSequence& delta,
                        std::size_t N, const ScanPolicy& scan);

}  // namespace wcp
