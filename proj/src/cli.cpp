#include "wcp/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "verify.hpp"
#include "wcp/algebra.hpp"
#include "wcp/errors.hpp"
#include "wcp/lattice.hpp"
#include "wcp/operators.hpp"
#include "wcp/series.hpp"
#include "wcp/weights.hpp"

namespace wcp::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotConverged = 2;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(bool v) { return v ? "true" : "false"; }
std::string fmt(std::size_t v) { return std::to_string(v); }

// Run settings parsed from a key = value file.
struct Config {
  double p = 2.0;
  std::size_t degree = 64;
  std::string beta_family = "one";
  std::string delta_family = "one";
  ScanPolicy scan;
  std::size_t i = 0;
  std::vector<std::size_t> M;
  std::optional<std::size_t> k;
  std::optional<std::size_t> N;
  std::optional<double> q;
  std::optional<std::string> series_f;
  std::optional<std::string> series_g;
  std::optional<Complex> lambda;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double to_real(const std::string& v, const std::string& key) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse real from '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError("config key '" + key + "': trailing garbage in '" + v + "'");
  return out;
}

std::size_t to_index(const std::string& v, const std::string& key) {
  const double r = to_real(v, key);
  if (r < 0 || r != std::floor(r))
    throw ConfigError("config key '" + key + "' must be a nonnegative integer");
  return static_cast<std::size_t>(r);
}

Complex to_complex(const std::string& v, const std::string& key) {
  std::istringstream in(v);
  double re = 0.0, im = 0.0;
  if (!(in >> re)) throw ConfigError("config key '" + key + "': cannot parse complex");
  if (!(in >> im)) im = 0.0;
  std::string rest;
  if (in.clear(), in >> rest) throw ConfigError("config key '" + key + "': trailing garbage");
  return Complex{re, im};
}

Config parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  Config cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key == "p") cfg.p = to_real(value, key);
    else if (key == "degree") cfg.degree = to_index(value, key);
    else if (key == "beta.family") cfg.beta_family = value;
    else if (key == "delta.family") cfg.delta_family = value;
    else if (key == "scan.nmax") cfg.scan.n_max = to_index(value, key);
    else if (key == "scan.window") cfg.scan.window = to_index(value, key);
    else if (key == "scan.threshold") cfg.scan.divergence_threshold = to_real(value, key);
    else if (key == "i") cfg.i = to_index(value, key);
    else if (key == "M") {
      std::stringstream ss(value);
      std::string part;
      while (std::getline(ss, part, ',')) cfg.M.push_back(to_index(trim(part), key));
      if (cfg.M.empty()) throw ConfigError("config key 'M' needs at least one value");
    } else if (key == "k") cfg.k = to_index(value, key);
    else if (key == "N") cfg.N = to_index(value, key);
    else if (key == "q") cfg.q = to_real(value, key);
    else if (key == "series.f") cfg.series_f = value;
    else if (key == "series.g") cfg.series_g = value;
    else if (key == "lambda") cfg.lambda = to_complex(value, key);
    else throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return cfg;
}

// One "re im" or "re" line per coefficient, line index = degree. Shorter
// files pad with zeros; longer files are an error.
FormalSeries load_series(const std::string& path, std::size_t degree_cap) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open series file '" + path + "'");
  FormalSeries f(degree_cap);
  std::string line;
  std::size_t degree = 0;
  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    if (degree > degree_cap)
      throw ConfigError("series file '" + path + "' has more than " +
                        std::to_string(degree_cap + 1) + " coefficients");
    f[degree] = to_complex(stripped, "series coefficient " + std::to_string(degree));
    ++degree;
  }
  return f;
}

struct Report {
  std::vector<std::string> lines;

  void header(std::initializer_list<const char*> cols) { row_raw(cols); }

  template <typename... Parts>
  void row(const Parts&... parts) {
    std::string line;
    bool first = true;
    ((line += (first ? "" : "\t") + part_to_string(parts), first = false), ...);
    lines.push_back(std::move(line));
  }

  void row_raw(std::initializer_list<const char*> cols) {
    std::string line;
    bool first = true;
    for (const char* c : cols) {
      if (!first) line += '\t';
      line += c;
      first = false;
    }
    lines.push_back(std::move(line));
  }

  int write(const std::string& out_path) const {
    if (out_path == "-") {
      for (const auto& l : lines) std::cout << l << '\n';
      return std::cout ? kExitOk : kExitUsage;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open output file '" << out_path << "'\n";
      return kExitUsage;
    }
    for (const auto& l : lines) out << l << '\n';
    return out ? kExitOk : kExitUsage;
  }

 private:
  static std::string part_to_string(const std::string& s) { return s; }
  static std::string part_to_string(const char* s) { return s; }
  static std::string part_to_string(double v) { return fmt(v); }
  static std::string part_to_string(bool v) { return fmt(v); }
  static std::string part_to_string(std::size_t v) { return fmt(v); }
  static std::string part_to_string(int v) { return std::to_string(v); }
};

struct Fixture {
  Config cfg;
  WeightSequence beta;
  WeightSequence delta;
  SpaceConfig space;
};

Fixture make_fixture(const Config& cfg) {
  const std::size_t n_max = std::max(cfg.degree, cfg.scan.n_max);
  WeightSequence beta = make_weight_family(cfg.beta_family, n_max);
  WeightSequence delta = make_weight_family(cfg.delta_family, n_max);
  SpaceConfig space(cfg.p, beta, delta, cfg.degree);
  return Fixture{cfg, std::move(beta), std::move(delta), std::move(space)};
}

void emit_series(Report& rep, const FormalSeries& f) {
  rep.header({"n", "re", "im"});
  for (std::size_t n = 0; n <= f.degree_cap(); ++n)
    rep.row(n, f[n].real(), f[n].imag());
}

int cmd_product(const Config& cfg, Report& rep) {
  const Fixture fx = make_fixture(cfg);
  if (!cfg.series_f || !cfg.series_g)
    throw ConfigError("product needs series.f and series.g");
  const FormalSeries f = load_series(*cfg.series_f, cfg.degree);
  const FormalSeries g = load_series(*cfg.series_g, cfg.degree);
  const FormalSeries out = cfg.i == 0 ? diamond(f, g, fx.space)
                                      : diamond_i(f, g, cfg.i, fx.space);
  emit_series(rep, out);
  return kExitOk;
}

int cmd_invert(const Config& cfg, Report& rep) {
  const Fixture fx = make_fixture(cfg);
  if (!cfg.series_f) throw ConfigError("invert needs series.f");
  const FormalSeries f = load_series(*cfg.series_f, cfg.degree);
  emit_series(rep, invert_i(f, cfg.i, fx.space));
  return kExitOk;
}

int cmd_conditions(const Config& cfg, Report& rep) {
  const Fixture fx = make_fixture(cfg);
  rep.header({"constant", "value", "converged", "witness"});
  bool all_converged = true;
  const double q = cfg.q ? *cfg.q : (cfg.p > 1.0 ? fx.space.conjugate_q() : 0.0);
  if (q > 1.0) {
    const ConditionReport r = holder_constant(fx.beta, fx.delta, q, cfg.i, cfg.scan);
    rep.row(cfg.i == 0 ? "C_o" : "C_i", r.value, r.converged, r.witness);
    all_converged = all_converged && r.converged;
  }
  if (cfg.M.size() == 1 && cfg.k) {
    const ConditionReport r = tail_constant(fx.beta, fx.delta, cfg.M[0], *cfg.k, cfg.i, cfg.scan);
    rep.row(cfg.i == 0 ? "b_{M,k}" : "b^i_{M,k}", r.value, r.converged, r.witness);
    all_converged = all_converged && r.converged;
  }
  if (cfg.N) {
    const ConditionReport tail = p1_tail_sum(fx.beta, fx.delta, *cfg.N, cfg.i, cfg.scan);
    rep.row("B_N", tail.value, tail.converged, tail.witness);
    all_converged = all_converged && tail.converged;
    if (*cfg.N >= 1) {
      const ConditionReport c = shift_norm_constant(fx.beta, fx.delta, *cfg.N, cfg.scan);
      rep.row("C_shift", c.value, c.converged, c.witness);
      all_converged = all_converged && c.converged;
    }
  }
  if (rep.lines.size() <= 1)
    throw ConfigError("conditions: nothing to compute (set q, M and k, or N)");
  return all_converged ? kExitOk : kExitNotConverged;
}

int cmd_opnorm(const Config& cfg, Report& rep) {
  const Fixture fx = make_fixture(cfg);
  OperatorMatrix A(cfg.degree);
  std::string kind;
  if (cfg.series_f) {
    const FormalSeries f = load_series(*cfg.series_f, cfg.degree);
    A = cfg.i == 0 ? mult_matrix(f, fx.space) : mult_matrix_i(f, cfg.i, fx.space);
    kind = "multiplication";
  } else if (cfg.N) {
    A = shift_matrix(*cfg.N, fx.space);
    kind = "shift^" + std::to_string(*cfg.N);
  } else {
    throw ConfigError("opnorm needs series.f or N");
  }
  const NormBounds nb = induced_norm_bounds(A, fx.space);
  rep.header({"operator", "lower", "upper", "method"});
  rep.row(kind, nb.lower, nb.upper, nb.method_tag);
  return kExitOk;
}

int cmd_compactness(const Config& cfg, Report& rep) {
  const Fixture fx = make_fixture(cfg);
  if (!cfg.series_f) throw ConfigError("compactness needs series.f");
  if (cfg.M.empty()) throw ConfigError("compactness needs M (single value or comma list)");
  const FormalSeries f = load_series(*cfg.series_f, cfg.degree);
  const auto rows = compactness_profile(f, cfg.i, cfg.M, fx.space, cfg.scan);
  rep.header({"M", "measured_lower", "measured_upper", "lemma_bound", "constants_converged"});
  bool all = true;
  for (const auto& row : rows) {
    rep.row(row.M, row.measured.lower, row.measured.upper, row.lemma_bound,
            row.bound_converged);
    all = all && row.bound_converged;
  }
  return all ? kExitOk : kExitNotConverged;
}

int cmd_krylov(const Config& cfg, Report& rep) {
  const Fixture fx = make_fixture(cfg);
  if (!cfg.series_f) throw ConfigError("krylov needs series.f");
  const FormalSeries f = load_series(*cfg.series_f, cfg.degree);
  const std::size_t K = cfg.N ? *cfg.N : cfg.degree;
  const KrylovProfile prof = krylov_profile(f, K, fx.space);
  rep.header({"key", "value"});
  rep.row("index", prof.index ? fmt(*prof.index) : std::string("none"));
  rep.row("rank", prof.rank);
  for (std::size_t j = 0; j < prof.leading_indices.size(); ++j)
    rep.row("leading[" + std::to_string(j) + "]",
            prof.leading_indices[j] ? fmt(*prof.leading_indices[j]) : std::string("none"));
  return kExitOk;
}

int cmd_spectrum(const Config& cfg, Report& rep) {
  const Fixture fx = make_fixture(cfg);
  if (!cfg.series_f || !cfg.lambda) throw ConfigError("spectrum needs series.f and lambda");
  const FormalSeries f = load_series(*cfg.series_f, cfg.degree);
  const bool member = spectrum_membership(f, *cfg.lambda, fx.space);
  rep.header({"key", "value"});
  rep.row("member", member);
  return kExitOk;
}

int cmd_verify(Report& rep) {
  const auto rows = run_verify_battery();
  rep.header({"check", "config", "pass", "detail"});
  bool all = true;
  for (const auto& r : rows) {
    rep.row(r.check, r.config, r.pass, r.detail);
    all = all && r.pass;
  }
  rep.row("all-checks", "summary", all, std::to_string(rows.size()) + " checks");
  return all ? kExitOk : kExitUsage;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"weighted Cauchy product toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path = "-";
  const std::vector<std::string> names = {"product",     "invert", "conditions",
                                          "opnorm",      "compactness", "krylov",
                                          "spectrum",    "verify"};
  for (const auto& name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "key = value settings file");
    sub->add_option("--out", out_path, "report path, '-' for stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    Report rep;
    int code = kExitOk;
    if (sub == "verify") {
      code = cmd_verify(rep);
    } else {
      if (config_path.empty()) throw ConfigError(sub + " needs --config");
      const Config cfg = parse_config(config_path);
      if (sub == "product") code = cmd_product(cfg, rep);
      else if (sub == "invert") code = cmd_invert(cfg, rep);
      else if (sub == "conditions") code = cmd_conditions(cfg, rep);
      else if (sub == "opnorm") code = cmd_opnorm(cfg, rep);
      else if (sub == "compactness") code = cmd_compactness(cfg, rep);
      else if (sub == "krylov") code = cmd_krylov(cfg, rep);
      else if (sub == "spectrum") code = cmd_spectrum(cfg, rep);
    }
    const int write_code = rep.write(out_path);
    return write_code == kExitOk ? code : write_code;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace wcp::cli
