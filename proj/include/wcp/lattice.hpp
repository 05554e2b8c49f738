#pragma once
// Cyclicity, invariant-subspace index, iterate-span echelon analysis, and
// the closed-ideal classification of the product algebra. The subspaces of
// series supported on degrees >= i are nested, shift-invariant, and at desk
// scale the span of shift iterates of f has an exact echelon structure:
// column j of the iterate matrix leads at degree min_support(f) + j.

#include <optional>
#include <vector>

#include "wcp/operators.hpp"
#include "wcp/series.hpp"

namespace wcp {

struct KrylovProfile {
  std::vector<FormalSeries> columns;  // f, shift f, shift^2 f, ...
  std::vector<std::optional<std::size_t>> leading_indices;
  std::size_t rank = 0;               // number of distinct leading indices
  std::optional<std::size_t> index;   // min_support(f); nullopt for f = 0
};

// Shift iterates f, S f, ..., S^K f with their leading indices. The
// leading entry of column j sits at degree index + j with coefficient
// delta_{index+j} f(index) / (delta_1^j delta_index), nonzero whenever
// f(index) is.
KrylovProfile krylov_profile(const FormalSeries& f, std::size_t K, const SpaceConfig& cfg);

// f generates the whole space under the shift iff f(0) != 0. Cross-checked
// against the iterate rank at the truncation; disagreement throws
// InternalError.
bool is_cyclic(const FormalSeries& f, const SpaceConfig& cfg);

// The i with: closure of the ideal generated by f = {series supported >= i},
// i.e. min_support(f); nullopt for the zero series (the zero ideal).
std::optional<std::size_t> ideal_closure_index(const FormalSeries& f, const SpaceConfig& cfg);

enum class TrendVerdict { Supported, Refuted, Inconclusive };

// Observed behaviour of the tail-gain sup b(M, k) along a ladder of M.
struct TailTrend {
  std::size_t k = 0;
  double first_value = 0.0;
  double last_value = 0.0;
  double last_ratio = 0.0;  // last rung / previous rung
  std::size_t rungs_converged = 0;
  TrendVerdict verdict = TrendVerdict::Inconclusive;
};

struct UnicellularityRow {
  std::size_t i = 0;
  ConditionReport holder;
  std::vector<TailTrend> tails;
  TrendVerdict verdict = TrendVerdict::Inconclusive;
};

struct UnicellularityReport {
  double q = 0.0;
  std::size_t k_max = 0;
  std::vector<std::size_t> ladder;
  std::vector<UnicellularityRow> rows;
};

// For each i <= i_max: the Hoelder constant at level i and, for each
// k <= k_max, the tail-gain sups along M in {1, 2, 4, ..., 1024} with a
// trend verdict (decaying to zero / stabilized nonzero / inconclusive).
// Never throws on non-convergence; that yields Inconclusive.
UnicellularityReport check_unicellularity_conditions(const WeightSequence& beta,
                                                     const WeightSequence& delta, double q,
                                                     std::size_t i_max, const ScanPolicy& scan,
                                                     std::size_t k_max = 4);

}  // namespace wcp
