#include "wcp/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "wcp/errors.hpp"

namespace wcp {

namespace {

// Trend thresholds for the tail-gain ladder. A rung ratio at or below
// kDecayRatio counts as decay toward zero; at or above kPlateauRatio with a
// non-negligible value it counts as a nonzero plateau.
constexpr double kDecayRatio = 0.75;
constexpr double kPlateauRatio = 0.99;
constexpr double kNegligible = 1e-12;

TrendVerdict classify_trend(const TailTrend& t, std::size_t rungs) {
  if (t.rungs_converged < rungs) return TrendVerdict::Inconclusive;
  if (t.last_value <= kNegligible) return TrendVerdict::Supported;
  if (t.last_ratio <= kDecayRatio) return TrendVerdict::Supported;
  if (t.last_ratio >= kPlateauRatio) return TrendVerdict::Refuted;
  return TrendVerdict::Inconclusive;
}

}  // namespace

KrylovProfile krylov_profile(const FormalSeries& f, std::size_t K, const SpaceConfig& cfg) {
  if (f.degree_cap() != cfg.degree_cap)
    throw ConfigError("krylov_profile: series degree cap does not match the space");
  if (K > cfg.degree_cap)
    throw ConfigError("krylov_profile: iterate count exceeds the truncation degree");

  KrylovProfile profile;
  profile.index = min_support(f);
  profile.columns.reserve(K + 1);
  profile.leading_indices.reserve(K + 1);
  FormalSeries column = f;
  for (std::size_t j = 0; j <= K; ++j) {
    if (j > 0) column = shift_apply(column, 1, cfg);
    profile.columns.push_back(column);
    profile.leading_indices.push_back(min_support(column));
  }
  std::set<std::size_t> distinct;
  for (const auto& lead : profile.leading_indices)
    if (lead) distinct.insert(*lead);
  profile.rank = distinct.size();
  return profile;
}

bool is_cyclic(const FormalSeries& f, const SpaceConfig& cfg) {
  const bool cyclic = (f[0] != 0.0);
  const KrylovProfile profile = krylov_profile(f, cfg.degree_cap, cfg);
  const bool full_rank = (profile.rank == cfg.degree_cap + 1);
  if (cyclic != full_rank)
    throw InternalError("is_cyclic: leading-coefficient criterion and iterate rank disagree");
  return cyclic;
}

std::optional<std::size_t> ideal_closure_index(const FormalSeries& f, const SpaceConfig& cfg) {
  if (f.degree_cap() != cfg.degree_cap)
    throw ConfigError("ideal_closure_index: series degree cap does not match the space");
  return min_support(f);
}

UnicellularityReport check_unicellularity_conditions(const WeightSequence& beta,
                                                     const WeightSequence& delta, double q,
                                                     std::size_t i_max, const ScanPolicy& scan,
                                                     std::size_t k_max) {
  UnicellularityReport report;
  report.q = q;
  report.k_max = k_max;
  for (std::size_t M = 1; M <= 1024; M *= 2) report.ladder.push_back(M);

  for (std::size_t i = 0; i <= i_max; ++i) {
    UnicellularityRow row;
    row.i = i;
    row.holder = holder_constant(beta, delta, q, i, scan);

    bool any_refuted = false, all_supported = true;
    for (std::size_t k = 1; k <= k_max; ++k) {
      TailTrend trend;
      trend.k = k;
      double prev = 0.0;
      bool first = true;
      for (const std::size_t M : report.ladder) {
        ConditionReport b;
        try {
          b = tail_constant(beta, delta, M, k, i, scan);
        } catch (const ConfigError&) {
          break;  // ladder rung beyond the scan ceiling
        }
        if (b.converged) ++trend.rungs_converged;
        if (first) {
          trend.first_value = b.value;
          first = false;
        } else if (prev > 0.0) {
          trend.last_ratio = b.value / prev;
        }
        trend.last_value = b.value;
        prev = b.value;
      }
      trend.verdict = classify_trend(trend, report.ladder.size());
      any_refuted = any_refuted || trend.verdict == TrendVerdict::Refuted;
      all_supported = all_supported && trend.verdict == TrendVerdict::Supported;
      row.tails.push_back(trend);
    }

    if (row.holder.diverged || any_refuted)
      row.verdict = TrendVerdict::Refuted;
    else if (row.holder.converged && all_supported)
      row.verdict = TrendVerdict::Supported;
    else
      row.verdict = TrendVerdict::Inconclusive;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace wcp
