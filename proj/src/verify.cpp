#include "verify.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "wcp/algebra.hpp"
#include "wcp/errors.hpp"
#include "wcp/lattice.hpp"
#include "wcp/operators.hpp"
#include "wcp/oracle.hpp"
#include "wcp/series.hpp"
#include "wcp/weights.hpp"

namespace wcp::cli {

namespace {

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double symmetric() { return 2.0 * uniform() - 1.0; }
};

FormalSeries random_series(SplitMix64& rng, std::size_t degree_cap) {
  FormalSeries f(degree_cap);
  for (std::size_t n = 0; n <= degree_cap; ++n)
    f[n] = Complex{rng.symmetric(), rng.symmetric()};
  return f;
}

double normwise_error(const FormalSeries& a, const FormalSeries& b) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t n = 0; n <= a.degree_cap(); ++n) {
    diff = std::max(diff, std::abs(a[n] - b[n]));
    scale = std::max({scale, std::abs(a[n]), std::abs(b[n])});
  }
  return scale == 0.0 ? diff : diff / scale;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Battery {
 public:
  std::vector<VerifyRow> rows;

  void record(std::string check, std::string config, bool pass, double detail) {
    rows.push_back({std::move(check), std::move(config), pass, fmt(detail)});
  }

  void unity_bit_exact(const std::string& delta_tag) {
    SpaceConfig cfg(2.0, make_weight_family("invfactorial", 64),
                    make_weight_family(delta_tag, 64), 64);
    const FormalSeries one = unity(0, cfg.delta, 64);
    SplitMix64 rng(11);
    bool pass = true;
    for (int t = 0; t < 20; ++t) {
      const FormalSeries f = random_series(rng, 64);
      const FormalSeries lhs = diamond(one, f, cfg);
      const FormalSeries rhs = diamond(f, one, cfg);
      for (std::size_t n = 0; n <= 64; ++n)
        if (lhs[n] != f[n] || rhs[n] != f[n]) pass = false;
    }
    record("unity-bit-exact", "delta=" + delta_tag + " D=64", pass, pass ? 0.0 : 1.0);
  }

  void reduction(const std::string& delta_tag) {
    SpaceConfig cfg(2.0, make_weight_family("invfactorial", 48),
                    make_weight_family(delta_tag, 48), 48);
    SplitMix64 rng(23);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const FormalSeries f = random_series(rng, 48), g = random_series(rng, 48);
      const FormalSeries got = diamond(f, g, cfg);
      const FormalSeries want = delta_tag == "one"
                                    ? oracle::cauchy_convolution(f, g, 48)
                                    : oracle::binomial_convolution(f, g, 48);
      worst = std::max(worst, normwise_error(got, want));
    }
    record("reduction-law", "delta=" + delta_tag + " D=48", worst <= 1e-13, worst);
  }

  void brute_agreement(const std::string& delta_tag) {
    SpaceConfig cfg(2.0, make_weight_family("invfactorial", 32),
                    make_weight_family(delta_tag, 32), 32);
    SplitMix64 rng(37);
    double worst = 0.0;
    for (int t = 0; t < 40; ++t) {
      const FormalSeries f = random_series(rng, 32), g = random_series(rng, 32);
      worst = std::max(worst,
                       normwise_error(diamond(f, g, cfg),
                                      oracle::brute_diamond(f, g, cfg.delta, 32)));
    }
    record("brute-force-agreement", "delta=" + delta_tag + " D=32", worst <= 1e-12, worst);
  }

  void commutativity_associativity(const std::string& delta_tag) {
    SpaceConfig cfg(2.0, make_weight_family("invfactorial", 64),
                    make_weight_family(delta_tag, 64), 64);
    SplitMix64 rng(41);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const FormalSeries f = random_series(rng, 64), g = random_series(rng, 64),
                         h = random_series(rng, 64);
      worst = std::max(worst, normwise_error(diamond(f, g, cfg), diamond(g, f, cfg)));
      worst = std::max(worst, normwise_error(diamond(diamond(f, g, cfg), h, cfg),
                                             diamond(f, diamond(g, h, cfg), cfg)));
    }
    record("commutative-associative", "delta=" + delta_tag + " D=64", worst <= 1e-12, worst);
  }

  void inversion_roundtrip(const std::string& delta_tag) {
    SpaceConfig cfg(2.0, make_weight_family("invfactorial", 64),
                    make_weight_family(delta_tag, 64), 64);
    SplitMix64 rng(53);
    bool pass = true;
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      FormalSeries f = random_series(rng, 64);
      f[0] = Complex{0.5 + 1.5 * rng.uniform(), 0.0};
      const FormalSeries g = invert(f, cfg);
      FormalSeries residual = diamond(f, g, cfg);
      residual[0] -= 1.0;
      const double lhs = lp_norm(residual, cfg);
      const double budget = 1e-9 * (1.0 + lp_norm(f, cfg) * lp_norm(g, cfg));
      worst = std::max(worst, lhs / budget);
      if (lhs > budget) pass = false;
    }
    record("inversion-roundtrip", "delta=" + delta_tag + " D=64", pass, worst);
  }

  void gelfand_multiplicative() {
    SpaceConfig cfg(2.0, make_weight_family("invfactorial", 32),
                    make_weight_family("factorial", 32), 32);
    SplitMix64 rng(59);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      const FormalSeries f = random_series(rng, 32), g = random_series(rng, 32);
      worst = std::max(worst,
                       std::abs(gelfand(diamond(f, g, cfg)) - gelfand(f) * gelfand(g)));
    }
    record("gelfand-multiplicative", "delta=factorial D=32", worst <= 1e-13, worst);
  }

  void holder_regression() {
    const ScanPolicy scan;
    const auto beta = make_weight_family("invfactorial", scan.n_max);
    const auto delta = make_weight_family("one", scan.n_max);
    const ConditionReport r = holder_constant(beta, delta, 2.0, 0, scan);
    const bool pass = r.converged && r.witness == 2 && std::abs(r.value - 2.25) <= 1e-12;
    record("holder-constant-regression", "beta=invfactorial q=2", pass, r.value);
  }

  void submultiplicativity_p2() {
    const ScanPolicy scan;
    SpaceConfig cfg(2.0, make_weight_family("invfactorial", scan.n_max),
                    make_weight_family("one", scan.n_max), 64);
    const double c0 = holder_constant(cfg.beta, cfg.delta, 2.0, 0, scan).value;
    SplitMix64 rng(61);
    bool pass = true;
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const FormalSeries f = random_series(rng, 64), g = random_series(rng, 64);
      const double lhs = lp_norm(diamond(f, g, cfg), cfg);
      const double rhs = std::sqrt(c0) * lp_norm(f, cfg) * lp_norm(g, cfg);
      worst = std::max(worst, lhs / rhs);
      if (lhs > rhs * (1.0 + 1e-12)) pass = false;
    }
    record("submultiplicative-p2", "beta=invfactorial D=64", pass, worst);
  }

  void p1_bound() {
    const ScanPolicy scan{512, 16, 1e12};
    SpaceConfig cfg(1.0, make_weight_family("invfactorial", 512),
                    make_weight_family("one", 512), 64);
    const double K = p1_product_bound(cfg.beta, cfg.delta, 1, scan);
    SplitMix64 rng(67);
    bool pass = true;
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const FormalSeries f = random_series(rng, 64), g = random_series(rng, 64);
      const double lhs = lp_norm(diamond(f, g, cfg), cfg);
      const double rhs = K * lp_norm(f, cfg) * lp_norm(g, cfg);
      worst = std::max(worst, lhs / rhs);
      if (lhs > rhs * (1.0 + 1e-12)) pass = false;
    }
    record("p1-product-bound", "beta=invfactorial N=1 D=64", pass, worst);
  }

  void tail_dichotomy() {
    const ScanPolicy scan{512, 16, 1e12};
    const auto beta = make_weight_family("invfactorial", 512);
    const auto delta = make_weight_family("one", 512);
    const ConditionReport at0 = p1_tail_sum(beta, delta, 0, 0, scan);
    const ConditionReport at1 = p1_tail_sum(beta, delta, 1, 0, scan);
    record("p1-tail-dichotomy", "beta=invfactorial N=0,1", !at0.converged && at1.converged,
           at1.value);
  }

  void shift_norm_equality(const std::string& beta_tag, std::size_t N, double p) {
    const std::size_t D = 256;
    const ScanPolicy scan{D, 16, 1e12};
    SpaceConfig cfg(p, make_weight_family(beta_tag, D), make_weight_family("one", D), D);
    const NormBounds nb = induced_norm_bounds(shift_matrix(N, cfg), cfg);
    const double c = shift_norm_constant(cfg.beta, cfg.delta, N, scan).value;
    const double tol = 1e-12 * std::max(1.0, c);
    const bool pass = std::abs(nb.lower - nb.upper) <= tol && std::abs(nb.lower - c) <= tol;
    record("shift-norm-equality",
           "beta=" + beta_tag + " N=" + std::to_string(N) + " p=" + fmt(p) + " D=256", pass,
           nb.lower - c);
  }

  void compactness_closed_form() {
    const std::size_t D = 64;
    const ScanPolicy scan{512, 16, 1e12};
    SpaceConfig cfg(2.0, make_weight_family("invfactorial", 512),
                    make_weight_family("one", 512), D);
    const FormalSeries z = FormalSeries::monomial(1, Complex{1.0, 0.0}, D);
    const auto rows = compactness_profile(z, 0, {1, 2, 4, 8}, cfg, scan);
    bool pass = true;
    double worst = 0.0;
    for (const auto& row : rows) {
      const double expected = 1.0 / static_cast<double>(row.M + 2);
      worst = std::max(worst, std::abs(row.measured.upper - expected));
      if (std::abs(row.measured.upper - expected) > 1e-12) pass = false;
      if (!row.bound_converged || row.lemma_bound < row.measured.upper) pass = false;
    }
    record("compactness-closed-form", "f=z beta=invfactorial p=2", pass, worst);
  }

  void krylov_echelon() {
    const std::size_t D = 96;
    SpaceConfig cfg(2.0, make_weight_family("invfactorial", D),
                    make_weight_family("one", D), D);
    SplitMix64 rng(71);
    bool pass = true;
    for (std::size_t i = 0; i <= 3; ++i)
      for (int t = 0; t < 5; ++t) {
        FormalSeries f = random_series(rng, D);
        for (std::size_t j = 0; j < i; ++j) f[j] = Complex{0.0, 0.0};
        f[i] = Complex{1.0 + rng.uniform(), rng.symmetric()};
        const KrylovProfile prof = krylov_profile(f, D, cfg);
        if (!prof.index || *prof.index != i) pass = false;
        if (prof.rank != D - i + 1) pass = false;
        for (std::size_t j = 0; j < prof.leading_indices.size(); ++j) {
          const auto lead = prof.leading_indices[j];
          if (i + j <= D ? (!lead || *lead != i + j) : lead.has_value()) pass = false;
        }
        const auto idx = ideal_closure_index(f, cfg);
        if (!idx || *idx != i) pass = false;
      }
    record("krylov-echelon", "beta=invfactorial D=96 i<=3", pass, pass ? 0.0 : 1.0);
  }

  void cyclicity_consistency() {
    const std::size_t D = 48;
    SpaceConfig cfg(2.0, make_weight_family("invfactorial", D),
                    make_weight_family("one", D), D);
    SplitMix64 rng(73);
    bool pass = true;
    for (int t = 0; t < 50; ++t) {
      FormalSeries f = random_series(rng, D);
      if (t % 2 == 0) f[0] = Complex{0.0, 0.0};
      const bool cyclic = is_cyclic(f, cfg);
      const auto idx = ideal_closure_index(f, cfg);
      const bool index_zero = idx && *idx == 0;
      bool invertible = true;
      try {
        invert(f, cfg);
      } catch (const NotInvertible&) {
        invertible = false;
      }
      if (cyclic != index_zero || cyclic != invertible) pass = false;
    }
    record("cyclicity-consistency", "beta=invfactorial D=48", pass, pass ? 0.0 : 1.0);
  }

  void spectrum_dichotomy() {
    SpaceConfig cfg(2.0, make_weight_family("invfactorial", 32),
                    make_weight_family("one", 32), 32);
    FormalSeries f(32);
    f[0] = Complex{0.5, 0.0};
    f[1] = Complex{1.0, 0.0};
    const FormalSeries z = FormalSeries::monomial(1, Complex{1.0, 0.0}, 32);
    const bool pass = spectrum_membership(f, Complex{0.5, 0.0}, cfg) &&
                      !spectrum_membership(f, Complex{0.0, 0.0}, cfg) &&
                      spectrum_membership(z, Complex{0.0, 0.0}, cfg);
    record("spectrum-dichotomy", "f=0.5+z", pass, pass ? 0.0 : 1.0);
  }
};

}  // namespace

std::vector<VerifyRow> run_verify_battery() {
  Battery b;
  b.unity_bit_exact("one");
  b.unity_bit_exact("factorial");
  b.reduction("one");
  b.reduction("factorial");
  b.brute_agreement("one");
  b.brute_agreement("factorial");
  b.brute_agreement("invfactorial");
  b.brute_agreement("geometric:1.5");
  b.commutativity_associativity("one");
  b.commutativity_associativity("factorial");
  b.inversion_roundtrip("one");
  b.inversion_roundtrip("factorial");
  b.gelfand_multiplicative();
  b.holder_regression();
  b.submultiplicativity_p2();
  b.p1_bound();
  b.tail_dichotomy();
  for (const char* beta : {"invfactorial", "poly:2"})
    for (std::size_t N : {std::size_t{1}, std::size_t{2}})
      for (double p : {1.0, 2.0}) b.shift_norm_equality(beta, N, p);
  b.compactness_closed_form();
  b.krylov_echelon();
  b.cyclicity_consistency();
  b.spectrum_dichotomy();
  return b.rows;
}

}  // namespace wcp::cli
