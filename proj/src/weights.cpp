#include "wcp/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <cctype>
#include <sstream>

#include "wcp/errors.hpp"

namespace wcp {

namespace {

constexpr double kStabilizationRel = 1e-12;
// Smallest log-log decay rate of anti-diagonal contributions accepted as
// evidence of a summable tail (integral test with margin over 1/s).
constexpr double kMinDecaySlope = 1.25;

// Running-max tracker with the trailing-window stabilization rule.
struct SupScan {
  double best = 0.0;
  bool any = false;
  std::size_t best_at = 0;
  std::size_t last_change = 0;
  std::size_t growth_run = 0;  // consecutive strictly-increasing observations
  double prev = 0.0;

  void observe(std::size_t n, double v) {
    if (!any) {
      best = v;
      best_at = last_change = n;
      any = true;
    } else {
      if (v > best) {
        if (v > best * (1.0 + kStabilizationRel)) last_change = n;
        best = v;
        best_at = n;
      }
      growth_run = (v > prev) ? growth_run + 1 : 0;
    }
    prev = v;
  }

  bool stable(std::size_t end, std::size_t window) const {
    return any && end >= last_change && end - last_change >= window;
  }
};

void validate_policy(const ScanPolicy& scan) {
  if (scan.window < 1 || scan.n_max < scan.window)
    throw ConfigError("scan policy requires n_max >= window >= 1");
  if (!(scan.divergence_threshold > 0))
    throw ConfigError("scan policy requires a positive divergence threshold");
}

std::size_t scan_ceiling(const ScanPolicy& scan, const WeightSequence& a,
                         const WeightSequence& b) {
  return std::min({scan.n_max, a.n_max(), b.n_max()});
}

double parse_real(std::string_view text, const char* what) {
  std::string buf(text);
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(buf, &pos);
  } catch (const std::exception&) {
    throw ConfigError(std::string("cannot parse ") + what + " from '" + buf + "'");
  }
  while (pos < buf.size() && std::isspace(static_cast<unsigned char>(buf[pos]))) ++pos;
  if (pos != buf.size())
    throw ConfigError(std::string("trailing garbage after ") + what + " in '" + buf + "'");
  if (!std::isfinite(v)) throw ConfigError(std::string(what) + " must be finite");
  return v;
}

// Least-squares slope of (log s, log c) over paired samples.
double loglog_slope(const std::vector<std::size_t>& s, const std::vector<double>& c) {
  const std::size_t n = s.size();
  double mx = 0.0, my = 0.0;
  std::vector<double> xs(n), ys(n);
  for (std::size_t j = 0; j < n; ++j) {
    xs[j] = std::log(static_cast<double>(s[j]));
    ys[j] = std::log(c[j]);
    mx += xs[j];
    my += ys[j];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    num += (xs[j] - mx) * (ys[j] - my);
    den += (xs[j] - mx) * (xs[j] - mx);
  }
  return num / den;
}

}  // namespace

WeightSequence::WeightSequence(std::vector<double> values, std::vector<double> logs,
                               std::string tag)
    : values_(std::move(values)), log_(std::move(logs)), tag_(std::move(tag)) {}

WeightSequence WeightSequence::from_values(std::vector<double> values, std::string tag) {
  if (values.empty()) throw ConfigError("weight sequence needs at least w(0)");
  if (values[0] != 1.0) throw ConfigError("w(0) must be exactly 1");
  std::vector<double> logs(values.size());
  for (std::size_t n = 0; n < values.size(); ++n) {
    if (!(values[n] > 0.0) || !std::isfinite(values[n]))
      throw ConfigError("weight w(" + std::to_string(n) + ") must be a positive finite real");
    logs[n] = std::log(values[n]);
  }
  logs[0] = 0.0;
  return WeightSequence(std::move(values), std::move(logs), std::move(tag));
}

WeightSequence WeightSequence::from_log_values(std::vector<double> log_values,
                                               std::string tag) {
  if (log_values.empty()) throw ConfigError("weight sequence needs at least w(0)");
  if (log_values[0] != 0.0) throw ConfigError("log w(0) must be exactly 0");
  std::vector<double> values(log_values.size());
  for (std::size_t n = 0; n < log_values.size(); ++n) {
    if (!std::isfinite(log_values[n]))
      throw ConfigError("log weight at index " + std::to_string(n) + " is not finite");
    values[n] = std::exp(log_values[n]);
  }
  return WeightSequence(std::move(values), std::move(log_values), std::move(tag));
}

WeightSequence WeightSequence::from_family(std::string_view spec, std::size_t n_max) {
  if (n_max < 1) throw ConfigError("weight family needs n_max >= 1");
  const std::size_t count = n_max + 1;
  std::string tag(spec);

  if (spec == "one") {
    return from_log_values(std::vector<double>(count, 0.0), tag);
  }
  if (spec.rfind("poly:", 0) == 0) {
    const double a = parse_real(spec.substr(5), "polynomial exponent");
    std::vector<double> logs(count);
    for (std::size_t n = 0; n < count; ++n)
      logs[n] = a * std::log(static_cast<double>(n + 1));
    logs[0] = 0.0;
    return from_log_values(std::move(logs), tag);
  }
  if (spec.rfind("geometric:", 0) == 0) {
    const double r = parse_real(spec.substr(10), "geometric ratio");
    if (!(r > 0.0)) throw ConfigError("geometric ratio must be > 0");
    const double lr = std::log(r);
    std::vector<double> logs(count);
    for (std::size_t n = 0; n < count; ++n) logs[n] = static_cast<double>(n) * lr;
    return from_log_values(std::move(logs), tag);
  }
  if (spec == "factorial" || spec == "invfactorial") {
    const double sign = (spec == "factorial") ? 1.0 : -1.0;
    std::vector<double> logs(count, 0.0);
    long double acc = 0.0L;  // cumulative log sums, never a direct product
    for (std::size_t n = 1; n < count; ++n) {
      acc += std::log(static_cast<long double>(n));
      logs[n] = sign * static_cast<double>(acc);
    }
    return from_log_values(std::move(logs), tag);
  }
  if (spec.rfind("custom:", 0) == 0) {
    const std::string path(spec.substr(7));
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open custom weight file '" + path + "'");
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
      if (values.size() > n_max) break;
      values.push_back(parse_real(line, "custom weight"));
      if (!(values.back() > 0.0))
        throw ConfigError("custom weight file '" + path + "' has a nonpositive value at line " +
                          std::to_string(values.size() - 1));
    }
    if (values.size() < count)
      throw ConfigError("custom weight file '" + path + "' has only " +
                        std::to_string(values.size()) + " entries, need " + std::to_string(count));
    values.resize(count);
    return from_values(std::move(values), tag);
  }
  throw ConfigError("unknown weight family '" + tag + "'");
}

WeightSequence make_weight_family(std::string_view spec, std::size_t n_max) {
  return WeightSequence::from_family(spec, n_max);
}

double diamond_ratio(const WeightSequence& delta, std::size_t n, std::size_t k,
                     std::size_t i) {
  if (k < i || n < k || n > delta.n_max() || n - k + i > delta.n_max())
    throw ConfigError("diamond_ratio: indices outside i <= k <= n <= n_max");
  if (k == i || k == n) {
    // delta_n / (delta_i delta_n) = 1 / delta_i; exactly 1.0 when i == 0.
    return i == 0 ? 1.0 : std::exp(-delta.log_value(i));
  }
  return std::exp(delta.log_value(n) - delta.log_value(k) - delta.log_value(n - k + i));
}

WeightSequence beta_tilde(const WeightSequence& beta, const WeightSequence& delta) {
  if (beta.n_max() != delta.n_max())
    throw ConfigError("beta_tilde: weight sequences must share n_max");
  const std::size_t out_max = beta.n_max() - 1;
  std::vector<double> logs(out_max + 1);
  const double ld1 = delta.log_value(1);
  for (std::size_t n = 0; n <= out_max; ++n)
    logs[n] = delta.log_value(n + 1) + beta.log_value(n) - delta.log_value(n) - ld1;
  return WeightSequence::from_log_values(std::move(logs),
                                         "tilde(" + beta.family_tag() + ";" + delta.family_tag() + ")");
}

ConditionReport holder_constant(const WeightSequence& beta, const WeightSequence& delta,
                                double q, std::size_t i, const ScanPolicy& scan) {
  if (!(q > 1.0)) throw ConfigError("holder_constant: q must be > 1");
  validate_policy(scan);
  const std::size_t end = scan_ceiling(scan, beta, delta);
  if (i > end) throw ConfigError("holder_constant: i exceeds the scan ceiling");

  ConditionReport rep;
  SupScan sup;
  for (std::size_t n = i; n <= end; ++n) {
    double inner = 0.0;
    for (std::size_t k = i; k <= n; ++k) {
      const std::size_t j = n - k + i;
      inner += std::exp(q * (delta.log_value(n) + beta.log_value(n) - delta.log_value(k) -
                             delta.log_value(j) - beta.log_value(k) - beta.log_value(j)));
    }
    rep.scanned = n;
    if (!std::isfinite(inner) || inner > scan.divergence_threshold) {
      rep.diverged = true;
      rep.witness = n;
      if (std::isfinite(inner)) sup.observe(n, inner);
      break;
    }
    sup.observe(n, inner);
    if (!rep.diverged && sup.growth_run >= scan.window) {
      rep.diverged = true;
      rep.witness = n;
    }
  }
  rep.value = sup.best;
  if (!rep.diverged) {
    rep.converged = sup.stable(rep.scanned, scan.window);
    rep.witness = sup.best_at;
  }
  return rep;
}

ConditionReport tail_constant(const WeightSequence& beta, const WeightSequence& delta,
                              std::size_t M, std::size_t k, std::size_t i,
                              const ScanPolicy& scan) {
  if (k < 1) throw ConfigError("tail_constant: k must be >= 1");
  validate_policy(scan);
  const std::size_t end = scan_ceiling(scan, beta, delta);
  const std::size_t start = M + i + 1;
  if (k + i > end || start + k > end)
    throw ConfigError("tail_constant: empty scan range (raise scan.n_max)");

  ConditionReport rep;
  SupScan sup;
  for (std::size_t n = start; n + k <= end; ++n) {
    const double ratio =
        std::exp(delta.log_value(n + k) + beta.log_value(n + k) - delta.log_value(n) -
                 delta.log_value(k + i) - beta.log_value(n) - beta.log_value(k + i));
    rep.scanned = n;
    if (!std::isfinite(ratio) || ratio > scan.divergence_threshold) {
      rep.diverged = true;
      rep.witness = n;
      if (std::isfinite(ratio)) sup.observe(n, ratio);
      break;
    }
    sup.observe(n, ratio);
    if (!rep.diverged && sup.growth_run >= scan.window) {
      rep.diverged = true;
      rep.witness = n;
    }
  }
  rep.value = sup.best;
  if (!rep.diverged) {
    rep.converged = sup.stable(rep.scanned, scan.window);
    rep.witness = sup.best_at;
  }
  return rep;
}

ConditionReport p1_tail_sum(const WeightSequence& beta, const WeightSequence& delta,
                            std::size_t N, std::size_t i, const ScanPolicy& scan) {
  if (N < i) throw ConfigError("p1_tail_sum: N must be >= i");
  validate_policy(scan);
  const std::size_t end = scan_ceiling(scan, beta, delta);

  ConditionReport rep;
  std::vector<std::size_t> diag_index;
  std::vector<double> diag_contrib;
  double total = 0.0, comp = 0.0;  // Neumaier-compensated accumulation
  for (std::size_t s = 2 * (N + 1); s <= end; ++s) {
    double c = 0.0;
    for (std::size_t n = N + 1; n + N + 1 <= s; ++n) {
      const std::size_t m = s - n;
      c += std::exp(delta.log_value(s - i) + beta.log_value(s - i) - delta.log_value(n) -
                    delta.log_value(m) - beta.log_value(n) - beta.log_value(m));
    }
    const double t = total + c;
    comp += (std::abs(total) >= std::abs(c)) ? (total - t) + c : (c - t) + total;
    total = t;
    rep.scanned = s;
    diag_index.push_back(s);
    diag_contrib.push_back(c);
    if (!std::isfinite(total) || total + comp > scan.divergence_threshold) {
      rep.diverged = true;
      break;
    }
  }
  rep.value = total + comp;
  rep.witness = rep.scanned;
  if (!rep.diverged && diag_contrib.size() >= scan.window) {
    const std::size_t w = scan.window;
    const std::size_t first = diag_contrib.size() - w;
    bool strict = true, positive = true;
    for (std::size_t j = first; j < diag_contrib.size(); ++j) {
      if (diag_contrib[j] > kStabilizationRel * rep.value) strict = false;
      if (!(diag_contrib[j] > 0.0)) positive = false;
    }
    if (strict) {
      rep.converged = true;
    } else if (positive) {
      const std::vector<std::size_t> s_tail(diag_index.end() - w, diag_index.end());
      const std::vector<double> c_tail(diag_contrib.end() - w, diag_contrib.end());
      rep.converged = loglog_slope(s_tail, c_tail) <= -kMinDecaySlope;
    }
  }
  return rep;
}

ConditionReport shift_norm_constant(const WeightSequence& beta, const WeightSequence& delta,
                                    std::size_t N, const ScanPolicy& scan) {
  if (N < 1) throw ConfigError("shift_norm_constant: N must be >= 1");
  validate_policy(scan);
  const std::size_t end = scan_ceiling(scan, beta, delta);
  if (N > end) throw ConfigError("shift_norm_constant: N exceeds the scan ceiling");

  ConditionReport rep;
  SupScan sup;
  const double ld1 = delta.log_value(1);
  for (std::size_t n = 0; n + N <= end; ++n) {
    const double gain =
        std::exp(beta.log_value(n + N) + delta.log_value(n + N) - beta.log_value(n) -
                 delta.log_value(n) - static_cast<double>(N) * ld1);
    rep.scanned = n;
    if (!std::isfinite(gain) || gain > scan.divergence_threshold) {
      rep.diverged = true;
      rep.witness = n;
      if (std::isfinite(gain)) sup.observe(n, gain);
      break;
    }
    sup.observe(n, gain);
    if (!rep.diverged && sup.growth_run >= scan.window) {
      rep.diverged = true;
      rep.witness = n;
    }
  }
  rep.value = sup.best;
  if (!rep.diverged) {
    rep.converged = sup.stable(rep.scanned, scan.window);
    rep.witness = sup.best_at;
  }
  return rep;
}

double p1_product_bound(const WeightSequence& beta, const WeightSequence& delta,
                        std::size_t N, const ScanPolicy& scan) {
  const ConditionReport tail = p1_tail_sum(beta, delta, N, 0, scan);
  if (!tail.converged)
    throw NotConverged("p1_product_bound: double tail sum did not converge at N = " +
                       std::to_string(N));
  double head = 0.0;
  for (std::size_t k = 0; k <= N; ++k) {
    double shift_k = 1.0;  // k = 0 is the identity
    if (k >= 1) {
      const ConditionReport c = shift_norm_constant(beta, delta, k, scan);
      if (!c.converged)
        throw NotConverged("p1_product_bound: shift norm constant did not converge at N = " +
                           std::to_string(k));
      shift_k = c.value;
    }
    head += std::exp(static_cast<double>(k) * delta.log_value(1) - beta.log_value(k) -
                     delta.log_value(k)) *
            shift_k;
  }
  return 2.0 * head + tail.value;
}

}  // namespace wcp
