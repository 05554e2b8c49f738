#include "wcp/algebra.hpp"

#include <string>

#include "wcp/errors.hpp"

namespace wcp {

namespace {

void require_cap(const FormalSeries& f, const SpaceConfig& cfg, const char* who) {
  if (f.degree_cap() != cfg.degree_cap)
    throw ConfigError(std::string(who) + ": series degree cap does not match the space");
}

void require_support(const FormalSeries& f, std::size_t i, const char* who) {
  for (std::size_t j = 0; j < i; ++j)
    if (f[j] != 0.0)
      throw SupportError(std::string(who) + ": nonzero coefficient at degree " +
                         std::to_string(j) + " < " + std::to_string(i));
}

}  // namespace

FormalSeries diamond(const FormalSeries& f, const FormalSeries& g, const SpaceConfig& cfg) {
  require_cap(f, cfg, "diamond");
  require_cap(g, cfg, "diamond");
  const std::size_t D = cfg.degree_cap;
  FormalSeries out(D);
  for (std::size_t n = 0; n <= D; ++n) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k <= n; ++k) {
      if (f[k] == 0.0) continue;  // keeps unity multiplication bit-exact
      acc += diamond_ratio(cfg.delta, n, k, 0) * (f[k] * g[n - k]);
    }
    out[n] = acc;
  }
  return out;
}

FormalSeries diamond_i(const FormalSeries& f, const FormalSeries& g, std::size_t i,
                       const SpaceConfig& cfg) {
  require_cap(f, cfg, "diamond_i");
  require_cap(g, cfg, "diamond_i");
  if (i > cfg.degree_cap) throw ConfigError("diamond_i: i exceeds the truncation degree");
  require_support(f, i, "diamond_i");
  require_support(g, i, "diamond_i");
  const std::size_t D = cfg.degree_cap;
  FormalSeries out(D);
  for (std::size_t n = i; n <= D; ++n) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = i; k <= n; ++k) {
      if (f[k] == 0.0) continue;
      acc += diamond_ratio(cfg.delta, n, k, i) * (f[k] * g[n - k + i]);
    }
    out[n] = acc;
  }
  return out;
}

FormalSeries unity(std::size_t i, const WeightSequence& delta, std::size_t degree_cap) {
  if (i > degree_cap) throw ConfigError("unity: i exceeds the truncation degree");
  return FormalSeries::monomial(i, Complex{delta.value(i), 0.0}, degree_cap);
}

FormalSeries diamond_power(const FormalSeries& f, std::size_t n, const SpaceConfig& cfg) {
  require_cap(f, cfg, "diamond_power");
  FormalSeries result = unity(0, cfg.delta, cfg.degree_cap);
  for (std::size_t t = 0; t < n; ++t) result = diamond(result, f, cfg);
  return result;
}

FormalSeries invert(const FormalSeries& f, const SpaceConfig& cfg) {
  return invert_i(f, 0, cfg);
}

FormalSeries invert_i(const FormalSeries& f, std::size_t i, const SpaceConfig& cfg) {
  require_cap(f, cfg, "invert_i");
  if (i > cfg.degree_cap) throw ConfigError("invert_i: i exceeds the truncation degree");
  require_support(f, i, "invert_i");
  if (f[i] == 0.0)
    throw NotInvertible("leading coefficient at degree " + std::to_string(i) + " vanishes");

  const std::size_t D = cfg.degree_cap;
  const double di = cfg.delta.value(i);
  FormalSeries g(D);
  g[i] = (di * di) / f[i];
  const Complex scale = -di / f[i];
  for (std::size_t n = i + 1; n <= D; ++n) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = i + 1; k <= n; ++k) {
      if (f[k] == 0.0) continue;
      acc += diamond_ratio(cfg.delta, n, k, i) * (f[k] * g[n - k + i]);
    }
    g[n] = scale * acc;
  }
  return g;
}

Complex gelfand(const FormalSeries& f) { return f[0]; }

bool spectrum_membership(const FormalSeries& f, Complex lambda, const SpaceConfig& cfg) {
  require_cap(f, cfg, "spectrum_membership");
  const bool member = (f[0] == lambda);
  if (!member) {
    FormalSeries shifted = f;
    shifted[0] -= lambda;
    try {
      invert(shifted, cfg);
    } catch (const NotInvertible&) {
      throw InternalError("spectrum_membership: inversion witness failed for a resolvent point");
    }
  }
  return member;
}

}  // namespace wcp
