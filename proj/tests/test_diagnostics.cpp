#include <doctest.h>

#include <cmath>
#include <vector>

#include "glogit/diagnostics.hpp"
#include "glogit/errors.hpp"
#include "test_util.hpp"

using namespace glogit;

namespace {

std::vector<double> ar1(double phi, std::size_t n, std::uint64_t seed) {
  RngStream rng(seed);
  std::vector<double> xs(n);
  double x = 0.0;
  for (auto& v : xs) v = x = phi * x + rng.normal();
  return xs;
}

Chain chain_from(const std::vector<std::vector<double>>& cols) {
  Chain c;
  const auto n = static_cast<Eigen::Index>(cols.front().size());
  c.draws.resize(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (Eigen::Index i = 0; i < n; ++i) c.draws(i, static_cast<Eigen::Index>(j)) = cols[j][static_cast<std::size_t>(i)];
    c.param_names.push_back(j + 1 == cols.size() ? "p" : "beta_" + std::to_string(j));
  }
  for (Eigen::Index i = 0; i < n; ++i) c.iters.push_back(i + 1);
  return c;
}

}  // namespace

TEST_CASE("acf of a constant series") {
  const std::vector<double> xs(500, 3.0);
  const auto r = acf(xs, 10);
  CHECK(r.size() == 11);
  CHECK(r[0] == 1.0);
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i] == 0.0);
  CHECK(effective_sample_size(xs) == 500.0);
  CHECK(std::isnan(geweke_z(xs)));
}

TEST_CASE("acf and pacf of an AR(1) series") {
  const auto xs = ar1(0.7, 200000, 1);
  const auto r = acf(xs, 5);
  CHECK(r[0] == 1.0);
  CHECK(r[1] == doctest::Approx(0.7).epsilon(0.02));
  CHECK(r[2] == doctest::Approx(0.49).epsilon(0.04));
  const auto pc = pacf(xs, 5);
  CHECK(pc[0] == 1.0);
  CHECK(pc[1] == doctest::Approx(r[1]));
  for (int lag = 2; lag <= 5; ++lag) CHECK(std::fabs(pc[static_cast<std::size_t>(lag)]) < 0.01);
  // ESS of AR(1) is about n (1 - phi) / (1 + phi).
  CHECK(effective_sample_size(xs) == doctest::Approx(200000 * 0.3 / 1.7).epsilon(0.1));
  CHECK_THROWS_AS(acf(xs, -1), DomainError);
  CHECK_THROWS_AS(acf(std::vector<double>(10, 1.0), 5), DomainError);
}

TEST_CASE("effective sample size of iid draws") {
  const auto xs = ar1(0.0, 100000, 2);
  CHECK(effective_sample_size(xs) == doctest::Approx(100000).epsilon(0.1));
}

TEST_CASE("type-7 quantiles") {
  const std::vector<double> xs{4.0, 1.0, 3.0, 2.0};
  CHECK(quantile(xs, 0.0) == 1.0);
  CHECK(quantile(xs, 1.0) == 4.0);
  CHECK(quantile(xs, 0.5) == 2.5);
  CHECK(quantile(xs, 0.25) == doctest::Approx(1.75));
  CHECK(quantile(std::vector<double>{7.0}, 0.3) == 7.0);
  CHECK_THROWS_AS(quantile(std::vector<double>{}, 0.5), DomainError);
  CHECK_THROWS_AS(quantile(xs, 1.5), DomainError);
}

TEST_CASE("Geweke z behaves on stationary and drifting series") {
  const auto xs = ar1(0.0, 10000, 3);
  CHECK(std::fabs(geweke_z(xs)) < 4.0);
  std::vector<double> drift = xs;
  for (std::size_t i = 0; i < drift.size(); ++i) drift[i] += 3.0 * i / drift.size();
  CHECK(std::fabs(geweke_z(drift)) > 10.0);
  CHECK_THROWS_AS(geweke_z(std::vector<double>(99, 1.0)), DomainError);
  CHECK_THROWS_AS(geweke_z(xs, 0.6, 0.5), DomainError);
}

TEST_CASE("Geweke z under affine maps") {
  const auto xs = ar1(0.5, 5000, 4);
  const double z = geweke_z(xs);
  for (double a : {2.0, 0.01, 1e3}) {
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = a * xs[i] - 7.0;
    CHECK(geweke_z(ys) == doctest::Approx(z).epsilon(1e-9));
  }
  std::vector<double> neg(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) neg[i] = -xs[i];
  CHECK(geweke_z(neg) == doctest::Approx(-z).epsilon(1e-9));
}

TEST_CASE("summarize: identical draws") {
  const Chain c = chain_from({std::vector<double>(200, 1.25), std::vector<double>(200, 0.3)});
  const auto s = summarize(c, {"const"});
  REQUIRE(s.params.size() == 2);
  CHECK(s.params[0].name == "beta_0");
  CHECK(s.params[0].label == "const");
  CHECK(s.params[1].label == "p");
  CHECK(s.params[0].sd == 0.0);
  CHECK(s.params[0].q025 == 1.25);
  CHECK(s.params[0].q975 == 1.25);
  CHECK(std::isnan(s.params[1].geweke_z));
}

TEST_CASE("summarize: iid normal pseudo-chain") {
  RngStream rng(5);
  std::vector<double> a(100000), b(100000);
  for (auto& v : a) v = rng.normal();
  for (auto& v : b) v = 2.0 + 0.5 * rng.normal();
  const auto s = summarize(chain_from({a, b}));
  CHECK(std::fabs(s.params[0].mean) < 0.01);
  CHECK(s.params[0].q025 == doctest::Approx(-1.96).epsilon(0.015));
  CHECK(s.params[0].q975 == doctest::Approx(1.96).epsilon(0.015));
  CHECK(s.params[0].sd == doctest::Approx(1.0).epsilon(0.01));
  CHECK(s.params[1].mean == doctest::Approx(2.0).epsilon(0.005));

  // Reordering columns only relabels rows.
  const auto swapped = summarize(chain_from({b, a}));
  CHECK(swapped.params[0].mean == s.params[1].mean);
  CHECK(swapped.params[1].q975 == s.params[0].q975);
  CHECK(swapped.params[1].ess == s.params[0].ess);
}

TEST_CASE("summarize short chains without Geweke") {
  const Chain c = chain_from({{1.0, 2.0, 3.0}, {0.5, 0.5, 0.5}});
  const auto s = summarize(c);
  CHECK(std::isnan(s.params[0].geweke_z));
  CHECK(s.params[0].mean == 2.0);
  Chain empty;
  empty.draws.resize(0, 2);
  CHECK_THROWS_AS(summarize(empty), DomainError);
}
