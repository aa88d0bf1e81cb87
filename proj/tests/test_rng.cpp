#include <doctest.h>

#include <cmath>
#include <vector>

#include "glogit/rng.hpp"
#include "glogit/specfun.hpp"
#include "test_util.hpp"

using namespace glogit;

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  bool c_differs = false, d_differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto va = a.next();
    CHECK(va == b.next());
    c_differs |= va != c.next();
    d_differs |= va != d.next();
  }
  CHECK(c_differs);
  CHECK(d_differs);
  CHECK(a.counter() == 100);
  CHECK(a.seed() == 42);
  CHECK(c.stream_id() == 1);
}

TEST_CASE("uniforms lie in the open unit interval") {
  RngStream rng(7);
  std::vector<double> xs(200000);
  for (auto& x : xs) {
    x = rng.uniform();
    REQUIRE(x > 0.0);
    REQUIRE(x < 1.0);
  }
  const auto m = testutil::moments(xs);
  CHECK(std::fabs(m.mean - 0.5) < 5 * m.se);
  CHECK(m.var == doctest::Approx(1.0 / 12).epsilon(0.01));
  CHECK(testutil::ks_statistic(xs, [](double x) { return x; }) <
        testutil::ks_critical(xs.size()));
}

TEST_CASE("normals match N(0, 1)") {
  RngStream rng(11, 3);
  const std::size_t n = 1000000;
  std::vector<double> xs(n);
  double tail = 0.0, m3 = 0.0, m4 = 0.0;
  for (auto& x : xs) {
    x = rng.normal();
    tail += std::fabs(x) > 3.0;
    m3 += x * x * x;
    m4 += x * x * x * x;
  }
  const auto m = testutil::moments(xs);
  CHECK(std::fabs(m.mean) < 5 * m.se);
  CHECK(std::fabs(m.var - 1.0) < 5 * std::sqrt(2.0 / n));
  CHECK(std::fabs(m3 / n) < 5 * std::sqrt(15.0 / n));
  CHECK(std::fabs(m4 / n - 3.0) < 5 * std::sqrt(96.0 / n));
  const double p_tail = 2 * normal_cdf(-3.0);
  CHECK(std::fabs(tail / n - p_tail) < 5 * std::sqrt(p_tail / n));
  xs.resize(200000);
  CHECK(testutil::ks_statistic(xs, normal_cdf) < testutil::ks_critical(xs.size()));
}

TEST_CASE("exponentials have unit mean") {
  RngStream rng(5);
  std::vector<double> xs(200000);
  for (auto& x : xs) x = rng.exponential();
  const auto m = testutil::moments(xs);
  CHECK(std::fabs(m.mean - 1.0) < 5 * m.se);
}
