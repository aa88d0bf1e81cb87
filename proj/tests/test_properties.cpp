// Randomised property checks; each case draws its inputs from a fixed seed.
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "glogit/diagnostics.hpp"
#include "glogit/io.hpp"
#include "glogit/model.hpp"
#include "glogit/specfun.hpp"
#include "glogit/stochastics.hpp"
#include "test_util.hpp"

using namespace glogit;

namespace {

constexpr int kCases = 300;

double log_uniform(RngStream& rng, double lo, double hi) {
  return std::exp(std::log(lo) + rng.uniform() * (std::log(hi) - std::log(lo)));
}

}  // namespace

TEST_CASE("property: incomplete beta reflection and monotonicity") {
  RngStream rng(101);
  for (int i = 0; i < kCases; ++i) {
    const double a = log_uniform(rng, 0.05, 80.0);
    const double b = log_uniform(rng, 0.05, 80.0);
    const double t = rng.uniform();
    const double u = std::min(1.0, t + 0.1 * rng.uniform());
    INFO("a=" << a << " b=" << b << " t=" << t);
    CHECK(reg_inc_beta(t, a, b) + reg_inc_beta(1.0 - t, b, a) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(reg_inc_beta(u, a, b) >= reg_inc_beta(t, a, b));
    CHECK(log_beta(a, b) == log_beta(b, a));
  }
}

TEST_CASE("property: generalized logistic cdf symmetry, bounds and ordering") {
  RngStream rng(102);
  for (int i = 0; i < kCases; ++i) {
    const double p = log_uniform(rng, 0.01, 50.0);
    const double x = 40.0 * (rng.uniform() - 0.5);
    const double dx = rng.uniform();
    const double f = glogistic_cdf(x, p);
    INFO("p=" << p << " x=" << x);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK(f + glogistic_cdf(-x, p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(glogistic_cdf(x + dx, p) >= f);
    CHECK(glogistic_logpdf(x, p) == doctest::Approx(glogistic_logpdf(-x, p)).epsilon(1e-12));
  }
}

TEST_CASE("property: truncated normal support") {
  RngStream rng(103);
  for (int i = 0; i < 20 * kCases; ++i) {
    const double mean = 60.0 * (rng.uniform() - 0.5);
    const double var = log_uniform(rng, 1e-4, 1e4);
    const bool pos = rng.uniform() < 0.5;
    const double z =
        sample_trunc_normal(mean, var, pos ? TruncSide::positive : TruncSide::nonpositive, rng);
    REQUIRE(std::isfinite(z));
    REQUIRE((pos ? z > 0.0 : z <= 0.0));
  }
}

TEST_CASE("property: Polya-Gamma draws are positive and the mean falls with |c|") {
  RngStream rng(104);
  for (int i = 0; i < kCases; ++i) {
    const double b = log_uniform(rng, 0.02, 100.0);
    const double c = 30.0 * (rng.uniform() - 0.5);
    const double w = sample_pg({b, c}, rng);
    REQUIRE(std::isfinite(w));
    REQUIRE(w >= kPgFloor);
    CHECK(pg_mean(b, std::fabs(c) + 0.5) <= pg_mean(b, c));
  }
}

TEST_CASE("property: summaries respect quantile order and column permutations") {
  RngStream rng(105);
  for (int i = 0; i < 40; ++i) {
    const auto n = static_cast<Eigen::Index>(100 + rng.next() % 400);
    Chain c;
    c.draws.resize(n, 3);
    for (Eigen::Index r = 0; r < n; ++r) {
      c.draws(r, 0) = rng.normal();
      c.draws(r, 1) = std::exp(3 * rng.normal());
      c.draws(r, 2) = rng.uniform() < 0.9 ? 0.0 : rng.normal();
      c.iters.push_back(r + 1);
    }
    c.param_names = {"beta_0", "beta_1", "p"};
    const auto s = summarize(c);
    for (const auto& ps : s.params) {
      CHECK(ps.q025 <= ps.q500);
      CHECK(ps.q500 <= ps.q975);
      CHECK(ps.sd >= 0.0);
      CHECK(ps.ess > 0.0);
    }
    Chain perm = c;
    perm.draws.col(0) = c.draws.col(2);
    perm.draws.col(2) = c.draws.col(0);
    const auto sp = summarize(perm);
    CHECK(sp.params[0].mean == s.params[2].mean);
    CHECK(sp.params[2].q975 == s.params[0].q975);
    const bool both_nan = std::isnan(sp.params[0].geweke_z) && std::isnan(s.params[2].geweke_z);
    CHECK((both_nan || sp.params[0].geweke_z == s.params[2].geweke_z));
  }
}

TEST_CASE("property: autocorrelations are bounded by one") {
  RngStream rng(106);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> xs(300);
    const double phi = 2.0 * rng.uniform() - 1.0;
    double x = 0.0;
    for (auto& v : xs) v = x = phi * x + rng.normal();
    for (double r : acf(xs, 40)) CHECK(std::fabs(r) <= 1.0 + 1e-12);
    for (double r : pacf(xs, 40)) CHECK(std::fabs(r) <= 1.0 + 1e-12);
  }
}

TEST_CASE("property: Geweke z is unchanged by positive affine maps") {
  RngStream rng(107);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> xs(1000), ys(1000);
    const double a = log_uniform(rng, 1e-3, 1e3);
    const double b = 100.0 * (rng.uniform() - 0.5);
    double x = 0.0;
    for (std::size_t t = 0; t < xs.size(); ++t) {
      xs[t] = x = 0.8 * x + rng.normal();
      ys[t] = a * xs[t] + b;
    }
    CHECK(geweke_z(ys) == doctest::Approx(geweke_z(xs)).epsilon(1e-7));
  }
}

TEST_CASE("property: numbers survive text serialisation") {
  RngStream rng(108);
  for (int i = 0; i < 20 * kCases; ++i) {
    const double v = std::ldexp(rng.normal(), static_cast<int>(rng.next() % 1800) - 900);
    REQUIRE(std::stod(format_double(v)) == v);
  }
}
