#include "wcp/series.hpp"

#include <cmath>

#include "wcp/errors.hpp"

namespace wcp {

FormalSeries::FormalSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw ConfigError("a series needs at least the degree-0 coefficient");
}

FormalSeries FormalSeries::constant(Complex c, std::size_t degree_cap) {
  FormalSeries f(degree_cap);
  f[0] = c;
  return f;
}

FormalSeries FormalSeries::monomial(std::size_t degree, Complex c, std::size_t degree_cap) {
  if (degree > degree_cap) throw ConfigError("monomial degree exceeds the truncation degree");
  FormalSeries f(degree_cap);
  f[degree] = c;
  return f;
}

SpaceConfig::SpaceConfig(double p_, WeightSequence beta_, WeightSequence delta_,
                         std::size_t degree_cap_)
    : p(p_), beta(std::move(beta_)), delta(std::move(delta_)), degree_cap(degree_cap_) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ConfigError("p must lie in [1, inf)");
  if (degree_cap > beta.n_max() || degree_cap > delta.n_max())
    throw ConfigError("degree cap exceeds the weight tables");
}

double SpaceConfig::conjugate_q() const {
  if (p == 1.0) throw ConfigError("conjugate exponent is undefined for p = 1");
  return p / (p - 1.0);
}

double lp_norm(const FormalSeries& f, const SpaceConfig& cfg) {
  if (f.degree_cap() > cfg.degree_cap)
    throw ConfigError("series degree cap exceeds the space's");
  double sum = 0.0, comp = 0.0;
  for (std::size_t n = 0; n <= f.degree_cap(); ++n) {
    const double a = std::abs(f[n]);
    if (a == 0.0) continue;
    const double term = std::exp(cfg.p * (std::log(a) + cfg.beta.log_value(n)));
    const double t = sum + term;
    comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  sum += comp;
  if (sum == 0.0) return 0.0;
  return cfg.p == 1.0 ? sum : std::pow(sum, 1.0 / cfg.p);
}

FormalSeries tail(const FormalSeries& f, std::size_t from) {
  if (from > f.degree_cap() + 1) throw ConfigError("tail start exceeds degree cap + 1");
  FormalSeries out = f;
  for (std::size_t n = 0; n < from; ++n) out[n] = Complex{0.0, 0.0};
  return out;
}

std::optional<std::size_t> min_support(const FormalSeries& f) {
  for (std::size_t n = 0; n <= f.degree_cap(); ++n)
    if (f[n] != 0.0) return n;
  return std::nullopt;
}

}  // namespace wcp
