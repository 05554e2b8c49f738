#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <vector>

#include "common.hpp"
#include "wcp/errors.hpp"
#include "wcp/weights.hpp"

using namespace wcp;
using wcp::testing::rel_diff;

namespace {

// Exact 64-bit binomials, enough for the rational cross-checks below.
double exact_binomial(unsigned n, unsigned k) {
  std::uint64_t num = 1, den = 1;
  for (unsigned j = 1; j <= k; ++j) {
    num *= n - k + j;
    den *= j;
    const std::uint64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

const ScanPolicy kShortScan{512, 16, 1e12};

}  // namespace

TEST_CASE("weight families match their defining formulas") {
  const auto one = make_weight_family("one", 8);
  for (std::size_t n = 0; n <= 8; ++n) CHECK(one.value(n) == 1.0);

  const auto poly = make_weight_family("poly:2", 8);
  CHECK(poly.value(0) == 1.0);
  CHECK(poly.value(3) == doctest::Approx(16.0).epsilon(1e-14));

  const auto invfact = make_weight_family("invfactorial", 8);
  CHECK(rel_diff(invfact.value(4), 1.0 / 24.0) < 1e-14);

  const auto fact = make_weight_family("factorial", 8);
  CHECK(rel_diff(fact.value(5), 120.0) < 1e-14);

  const auto geo = make_weight_family("geometric:0.5", 8);
  CHECK(rel_diff(geo.value(3), 0.125) < 1e-14);
  CHECK(geo.value(0) == 1.0);
}

TEST_CASE("factorial family stays usable past double overflow") {
  const auto fact = make_weight_family("factorial", 2048);
  CHECK(std::isfinite(fact.log_value(2048)));
  // ln(300!) from direct summation
  long double acc = 0.0L;
  for (int j = 2; j <= 300; ++j) acc += std::log(static_cast<long double>(j));
  CHECK(rel_diff(fact.log_value(300), static_cast<double>(acc)) < 1e-14);
}

TEST_CASE("w(0) = 1 exactly and log table reproduces direct ratios") {
  for (const char* tag : {"one", "poly:2", "poly:0.5", "geometric:1.5", "factorial",
                          "invfactorial"}) {
    const auto w = make_weight_family(tag, 60);
    CHECK(w.value(0) == 1.0);
    CHECK(w.log_value(0) == 0.0);
    for (std::size_t n = 1; n <= 20; ++n)
      for (std::size_t m = 0; m < n; ++m) {
        const double direct = w.value(n) / w.value(m);
        const double via_logs = std::exp(w.log_value(n) - w.log_value(m));
        CHECK(rel_diff(direct, via_logs) < 1e-12);
      }
  }
}

TEST_CASE("custom weight files") {
  const char* path = "custom_weights_test.txt";
  {
    std::ofstream out(path);
    out << "1.0\n0.5\n0.25\n2.5\n";
  }
  const auto w = make_weight_family(std::string("custom:") + path, 3);
  CHECK(w.value(0) == 1.0);
  CHECK(w.value(2) == 0.25);
  CHECK(w.value(3) == 2.5);

  {
    std::ofstream out(path);
    out << "2.0\n0.5\n";
  }
  CHECK_THROWS_AS(make_weight_family(std::string("custom:") + path, 1), ConfigError);

  {
    std::ofstream out(path);
    out << "1.0\n-0.5\n";
  }
  CHECK_THROWS_AS(make_weight_family(std::string("custom:") + path, 1), ConfigError);

  {
    std::ofstream out(path);
    out << "1.0\n";
  }
  CHECK_THROWS_AS(make_weight_family(std::string("custom:") + path, 3), ConfigError);
  std::remove(path);
}

TEST_CASE("family descriptor errors") {
  CHECK_THROWS_AS(make_weight_family("unknown", 4), ConfigError);
  CHECK_THROWS_AS(make_weight_family("geometric:0", 4), ConfigError);
  CHECK_THROWS_AS(make_weight_family("geometric:-2", 4), ConfigError);
  CHECK_THROWS_AS(make_weight_family("poly:x", 4), ConfigError);
  CHECK_THROWS_AS(make_weight_family("one", 0), ConfigError);
  CHECK_THROWS_AS(make_weight_family("custom:/no/such/file", 4), ConfigError);
}

TEST_CASE("diamond_ratio boundary cases and exact values") {
  const auto ones = make_weight_family("one", 16);
  const auto fact = make_weight_family("factorial", 16);

  CHECK(diamond_ratio(ones, 5, 2, 0) == 1.0);
  CHECK(diamond_ratio(ones, 5, 0, 0) == 1.0);
  CHECK(diamond_ratio(ones, 5, 5, 0) == 1.0);

  // factorial weights give binomial-type ratios: 4!/(2! 2!) = 6, 4!/(2! 3!) = 2
  CHECK(rel_diff(diamond_ratio(fact, 4, 2, 0), 6.0) < 1e-13);
  CHECK(rel_diff(diamond_ratio(fact, 4, 2, 1), 2.0) < 1e-13);
  CHECK(rel_diff(diamond_ratio(fact, 5, 2, 0), 10.0) < 1e-13);

  // boundaries at i > 0 collapse to 1/delta_i
  CHECK(rel_diff(diamond_ratio(fact, 7, 2, 2), 0.5) < 1e-14);
  CHECK(rel_diff(diamond_ratio(fact, 7, 7, 2), 0.5) < 1e-14);
  // exact 1.0 at the i = 0 boundaries even for factorial weights
  CHECK(diamond_ratio(fact, 9, 0, 0) == 1.0);
  CHECK(diamond_ratio(fact, 9, 9, 0) == 1.0);

  CHECK_THROWS_AS(diamond_ratio(fact, 4, 5, 0), ConfigError);
  CHECK_THROWS_AS(diamond_ratio(fact, 4, 1, 2), ConfigError);
  CHECK_THROWS_AS(diamond_ratio(fact, 17, 2, 0), ConfigError);
}

TEST_CASE("beta_tilde") {
  const auto beta = make_weight_family("invfactorial", 16);
  const auto ones = make_weight_family("one", 16);
  const auto fact = make_weight_family("factorial", 16);

  SUBCASE("delta = 1 leaves beta unchanged") {
    const auto bt = beta_tilde(beta, ones);
    CHECK(bt.n_max() == 15);
    for (std::size_t n = 0; n <= 15; ++n) CHECK(bt.value(n) == beta.value(n));
  }
  SUBCASE("factorial delta against constant beta gives n+1") {
    const auto bt = beta_tilde(ones, fact);
    CHECK(bt.value(0) == 1.0);
    for (std::size_t n = 1; n <= 15; ++n)
      CHECK(rel_diff(bt.value(n), static_cast<double>(n + 1)) < 1e-13);
  }
  SUBCASE("first value is exactly one") {
    const auto bt = beta_tilde(beta, fact);
    CHECK(bt.value(0) == 1.0);
    CHECK(rel_diff(beta_tilde(beta, ones).value(3), 1.0 / 6.0) < 1e-14);
  }
}

TEST_CASE("holder_constant: inverse factorial weights peak at n = 2") {
  const auto beta = make_weight_family("invfactorial", 512);
  const auto ones = make_weight_family("one", 512);
  const auto rep = holder_constant(beta, ones, 2.0, 0, kShortScan);
  CHECK(rep.converged);
  CHECK(!rep.diverged);
  CHECK(rep.witness == 2);
  CHECK(std::abs(rep.value - 2.25) <= 1e-12);

  // independent check against exact binomials: inner sum is sum_k C(n,k)^-2
  double best = 0.0;
  for (unsigned n = 0; n <= 30; ++n) {
    double s = 0.0;
    for (unsigned k = 0; k <= n; ++k) {
      const double b = exact_binomial(n, k);
      s += 1.0 / (b * b);
    }
    best = std::max(best, s);
  }
  CHECK(rel_diff(best, rep.value) < 1e-13);
}

TEST_CASE("holder_constant: polynomial weights converge to the frozen constant") {
  const auto beta = make_weight_family("poly:2", 512);
  const auto ones = make_weight_family("one", 512);
  const auto rep = holder_constant(beta, ones, 2.0, 0, kShortScan);
  CHECK(rep.converged);
  CHECK(rep.witness == 4);
  // exact value 32254481/13436928, from rational evaluation of the sup
  CHECK(rel_diff(rep.value, 2.4004356501724204) < 1e-12);
}

TEST_CASE("holder_constant: restricted levels for inverse factorial weights") {
  const auto beta = make_weight_family("invfactorial", 512);
  const auto ones = make_weight_family("one", 512);
  const auto c1 = holder_constant(beta, ones, 2.0, 1, kShortScan);
  CHECK(c1.converged);
  CHECK(c1.witness == 4);
  CHECK(rel_diff(c1.value, 2.5) < 1e-13);  // 5/2 by rational evaluation
  const auto c2 = holder_constant(beta, ones, 2.0, 2, kShortScan);
  CHECK(c2.converged);
  CHECK(c2.witness == 5);
  CHECK(rel_diff(c2.value, 10.88) < 1e-13);  // 272/25
}

TEST_CASE("holder_constant: divergent families are flagged") {
  const auto ones = make_weight_family("one", 512);
  SUBCASE("geometric weights: unit terms, inner sum n+1") {
    const auto geo = make_weight_family("geometric:2", 512);
    const auto rep = holder_constant(geo, ones, 2.0, 0, kShortScan);
    CHECK(!rep.converged);
    CHECK(rep.diverged);
    CHECK(rep.value >= 512.0);
  }
  SUBCASE("constant weights diverge the same way") {
    const auto rep = holder_constant(ones, ones, 2.0, 0, kShortScan);
    CHECK(!rep.converged);
    CHECK(rep.diverged);
  }
  SUBCASE("threshold break on factorial growth") {
    const auto fact = make_weight_family("factorial", 512);
    const auto rep = holder_constant(fact, ones, 2.0, 0, kShortScan);
    CHECK(!rep.converged);
    CHECK(rep.diverged);
    CHECK(rep.scanned < 512);  // stopped at the divergence threshold
  }
  CHECK_THROWS_AS(holder_constant(ones, ones, 1.0, 0, kShortScan), ConfigError);
  CHECK_THROWS_AS(holder_constant(ones, ones, 0.5, 0, kShortScan), ConfigError);
}

TEST_CASE("tail_constant on the fixture families") {
  const auto ones = make_weight_family("one", 512);
  const auto invfact = make_weight_family("invfactorial", 512);
  const auto poly = make_weight_family("poly:2", 512);

  SUBCASE("inverse factorial: ratio 1/(n+1) decreasing") {
    const auto rep = tail_constant(invfact, ones, 1, 1, 0, kShortScan);
    CHECK(rep.converged);
    CHECK(rep.witness == 2);
    CHECK(rel_diff(rep.value, 1.0 / 3.0) < 1e-13);
  }
  SUBCASE("poly:2 at M=0, k=1") {
    const auto rep = tail_constant(poly, ones, 0, 1, 0, kShortScan);
    CHECK(rep.converged);
    CHECK(rep.witness == 1);
    CHECK(rel_diff(rep.value, 0.5625) < 1e-13);
  }
  SUBCASE("geometric weights cancel to a constant ratio of one") {
    const auto geo = make_weight_family("geometric:0.5", 512);
    for (std::size_t M : {std::size_t{0}, std::size_t{3}})
      for (std::size_t k : {std::size_t{1}, std::size_t{4}}) {
        const auto rep = tail_constant(geo, ones, M, k, 0, kShortScan);
        CHECK(rep.converged);
        CHECK(rel_diff(rep.value, 1.0) < 1e-12);
      }
  }
  SUBCASE("monotone nonincreasing in M where the ratio decreases in n") {
    for (const auto* w : {&poly, &invfact})
      for (std::size_t k : {std::size_t{1}, std::size_t{2}}) {
        double prev = 0.0;
        for (std::size_t M = 0; M <= 8; ++M) {
          const auto rep = tail_constant(*w, ones, M, k, 0, kShortScan);
          if (M > 0) CHECK(rep.value <= prev * (1.0 + 1e-12));
          prev = rep.value;
        }
      }
  }
  SUBCASE("restricted level shifts the scan start") {
    const auto rep = tail_constant(invfact, ones, 1, 1, 2, kShortScan);
    CHECK(rep.converged);
    CHECK(rep.witness == 4);  // first scanned n = M + i + 1
  }
  CHECK_THROWS_AS(tail_constant(invfact, ones, 1, 0, 0, kShortScan), ConfigError);
  CHECK_THROWS_AS(tail_constant(invfact, ones, 600, 1, 0, kShortScan), ConfigError);
}

TEST_CASE("p1_tail_sum dichotomy for inverse factorial weights") {
  const auto invfact = make_weight_family("invfactorial", 512);
  const auto ones = make_weight_family("one", 512);

  const auto at0 = p1_tail_sum(invfact, ones, 0, 0, kShortScan);
  CHECK(!at0.converged);
  // partial sum at ceiling 512, from exact summation: 12.625197515322033
  CHECK(rel_diff(at0.value, 12.625197515322033) < 1e-10);

  const auto at1 = p1_tail_sum(invfact, ones, 1, 0, kShortScan);
  CHECK(at1.converged);
  CHECK(rel_diff(at1.value, 1.4921644462225869) < 1e-10);
}

TEST_CASE("p1_tail_sum: constant terms never converge") {
  const auto geo = make_weight_family("geometric:2", 512);
  const auto ones = make_weight_family("one", 512);
  const auto rep = p1_tail_sum(geo, ones, 0, 0, kShortScan);
  CHECK(!rep.converged);
}

TEST_CASE("p1_tail_sum partial sums are monotone in the scan ceiling") {
  const auto invfact = make_weight_family("invfactorial", 512);
  const auto ones = make_weight_family("one", 512);
  double prev = 0.0;
  for (std::size_t ceiling : {std::size_t{128}, std::size_t{256}, std::size_t{512}}) {
    const auto rep = p1_tail_sum(invfact, ones, 1, 0, ScanPolicy{ceiling, 16, 1e12});
    CHECK(rep.value >= prev);
    prev = rep.value;
  }
}

TEST_CASE("p1_tail_sum validates N >= i") {
  const auto invfact = make_weight_family("invfactorial", 64);
  const auto ones = make_weight_family("one", 64);
  CHECK_THROWS_AS(p1_tail_sum(invfact, ones, 1, 2, kShortScan), ConfigError);
  CHECK_NOTHROW(p1_tail_sum(invfact, ones, 2, 2, ScanPolicy{64, 16, 1e12}));
}

TEST_CASE("shift_norm_constant") {
  const auto ones = make_weight_family("one", 512);
  const auto invfact = make_weight_family("invfactorial", 512);
  const auto poly = make_weight_family("poly:2", 512);

  const auto a = shift_norm_constant(invfact, ones, 1, kShortScan);
  CHECK(a.converged);
  CHECK(a.witness == 0);
  CHECK(rel_diff(a.value, 1.0) < 1e-14);

  const auto b = shift_norm_constant(poly, ones, 1, kShortScan);
  CHECK(b.converged);
  CHECK(b.witness == 0);
  CHECK(rel_diff(b.value, 4.0) < 1e-13);

  for (std::size_t N : {std::size_t{1}, std::size_t{3}, std::size_t{7}}) {
    const auto c = shift_norm_constant(ones, ones, N, kShortScan);
    CHECK(c.converged);
    CHECK(c.value == 1.0);
  }
  CHECK_THROWS_AS(shift_norm_constant(ones, ones, 0, kShortScan), ConfigError);
}

TEST_CASE("p1_product_bound") {
  const auto ones = make_weight_family("one", 512);
  const auto invfact = make_weight_family("invfactorial", 512);

  SUBCASE("constant weights have no convergent tail") {
    CHECK_THROWS_AS(p1_product_bound(ones, ones, 0, kShortScan), NotConverged);
  }
  SUBCASE("inverse factorial weights at N = 1 and N = 2") {
    const double K1 = p1_product_bound(invfact, ones, 1, kShortScan);
    // head 2*(1 + 1) = 4 plus the frozen double tail partial sum
    CHECK(rel_diff(K1, 4.0 + 1.4921644462225869) < 1e-9);
    const double K2 = p1_product_bound(invfact, ones, 2, kShortScan);
    CHECK(std::isfinite(K2));
    CHECK(K2 != K1);
    CHECK(K2 > 6.0);  // head alone is 2*(1 + 1 + 1)
  }
}

TEST_CASE("scan policy validation") {
  const auto ones = make_weight_family("one", 64);
  CHECK_THROWS_AS(holder_constant(ones, ones, 2.0, 0, ScanPolicy{8, 16, 1e12}), ConfigError);
  CHECK_THROWS_AS(holder_constant(ones, ones, 2.0, 0, ScanPolicy{64, 0, 1e12}), ConfigError);
  CHECK_THROWS_AS(holder_constant(ones, ones, 2.0, 0, ScanPolicy{64, 16, -1.0}), ConfigError);
}
