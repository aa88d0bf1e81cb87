#include "glogit/stochastics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "glogit/errors.hpp"
#include "glogit/specfun.hpp"

namespace glogit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTruncSwitch = 2.0;

// Marsaglia-Tsang constants for one shape, reused across many draws.
class GammaKernel {
 public:
  explicit GammaKernel(double shape)
      : boost_(shape < 1.0), inv_shape_(1.0 / shape) {
    const double a = boost_ ? shape + 1.0 : shape;
    d_ = a - 1.0 / 3.0;
    c_ = 1.0 / std::sqrt(9.0 * d_);
  }

  double draw(RngStream& rng) const {
    double g;
    for (;;) {
      const double x = rng.normal();
      double v = 1.0 + c_ * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      const double u = rng.uniform();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2 ||
          std::log(u) < 0.5 * x2 + d_ * (1.0 - v + std::log(v))) {
        g = d_ * v;
        break;
      }
    }
    if (boost_) g *= std::exp(std::log(rng.uniform()) * inv_shape_);
    return g;
  }

 private:
  bool boost_;
  double inv_shape_;
  double d_ = 0.0;
  double c_ = 0.0;
};

// Standard normal restricted to (a, inf).
double std_normal_above(double a, RngStream& rng) {
  if (a >= kTruncSwitch) {
    // Robert (1995) translated-exponential proposal with the optimal rate.
    const double lambda = 0.5 * (a + std::sqrt(a * a + 4.0));
    for (;;) {
      const double z = a + rng.exponential() / lambda;
      const double diff = z - lambda;
      if (rng.uniform() <= std::exp(-0.5 * diff * diff)) return z;
    }
  }
  double x;
  if (a <= 0.0) {
    const double pa = normal_cdf(a);
    x = normal_quantile(pa + rng.uniform() * (1.0 - pa));
  } else {
    // Work with the upper-tail mass directly to keep precision.
    x = -normal_quantile(rng.uniform() * normal_cdf(-a));
  }
  return std::max(x, a);
}

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

double sample_gamma(double shape, double rate, RngStream& rng) {
  require(shape > 0.0 && std::isfinite(shape), "gamma shape must be positive");
  require(rate > 0.0 && std::isfinite(rate), "gamma rate must be positive");
  const double g = GammaKernel(shape).draw(rng) / rate;
  return std::max(g, std::numeric_limits<double>::denorm_min());
}

double sample_trunc_normal(double mean, double variance, TruncSide side,
                           RngStream& rng) {
  require(variance > 0.0 && std::isfinite(variance),
          "truncated normal variance must be positive and finite");
  require(std::isfinite(mean), "truncated normal mean must be finite");
  const double sd = std::sqrt(variance);
  if (side == TruncSide::positive) {
    const double z = mean + sd * std_normal_above(-mean / sd, rng);
    return z > 0.0 ? z : std::numeric_limits<double>::denorm_min();
  }
  const double z = mean - sd * std_normal_above(mean / sd, rng);
  return z <= 0.0 ? z : 0.0;
}

Eigen::VectorXd sample_mvn(const Eigen::VectorXd& mean,
                           const Eigen::MatrixXd& covariance, RngStream& rng) {
  const auto k = mean.size();
  if (covariance.rows() != k || covariance.cols() != k) {
    throw DomainError("sample_mvn: covariance dimensions do not match the mean");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(covariance);
  if (llt.info() != Eigen::Success) {
    throw NumericError("sample_mvn: covariance is not positive definite");
  }
  Eigen::VectorXd z(k);
  for (Eigen::Index i = 0; i < k; ++i) z[i] = rng.normal();
  return mean + llt.matrixL() * z;
}

Eigen::VectorXd sample_mvn_precision(const Eigen::MatrixXd& precision,
                                     const Eigen::VectorXd& linear,
                                     RngStream& rng) {
  const auto k = linear.size();
  if (precision.rows() != k || precision.cols() != k) {
    throw DomainError("sample_mvn_precision: dimension mismatch");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(precision);
  if (llt.info() != Eigen::Success) {
    throw NumericError("sample_mvn_precision: precision is not positive definite");
  }
  Eigen::VectorXd z(k);
  for (Eigen::Index i = 0; i < k; ++i) z[i] = rng.normal();
  // Q = L L^T: mean solves Q m = r, and L^{-T} z has covariance Q^{-1}.
  Eigen::VectorXd draw = llt.solve(linear);
  draw += llt.matrixU().solve(z);
  return draw;
}

double pg_mean(double b, double c) {
  require(b > 0.0 && std::isfinite(b), "Polya-Gamma shape must be positive");
  c = std::fabs(c);
  if (c < 1e-6) return b * (0.25 - c * c / 48.0);
  return b * std::tanh(0.5 * c) / (2.0 * c);
}

double sample_pg(const PGParams& params, RngStream& rng, int terms) {
  require(params.b > 0.0 && std::isfinite(params.b),
          "Polya-Gamma shape b must be positive");
  require(std::isfinite(params.c), "Polya-Gamma tilt c must be finite");
  require(terms >= 1, "Polya-Gamma truncation must keep at least one term");

  const GammaKernel gamma(params.b);
  const double shift = params.c * params.c / (4.0 * kPi * kPi);
  double weighted = 0.0;
  double weight_sum = 0.0;
  for (int k = 1; k <= terms; ++k) {
    const double h = k - 0.5;
    const double w = 1.0 / (h * h + shift);
    weight_sum += w;
    weighted += gamma.draw(rng) * w;
  }
  constexpr double scale = 1.0 / (2.0 * kPi * kPi);
  const double tail =
      std::max(0.0, pg_mean(params.b, params.c) - params.b * weight_sum * scale);
  return std::max(weighted * scale + tail, kPgFloor);
}

PgIdentityCheck verify_pg_identity(double a, double b, double psi, long n_draws,
                                   RngStream& rng) {
  require(a > 0.0, "identity check needs a > 0");
  require(b > 0.0, "identity check needs b > 0");
  require(n_draws >= 1, "identity check needs at least one draw");
  require(std::isfinite(psi), "identity check needs finite psi");
  const double kappa = a - 0.5 * b;
  const double lhs = std::exp(a * psi - b * log1p_exp(psi));
  double kernel_sum = 0.0;
  const double half_psi2 = 0.5 * psi * psi;
  for (long i = 0; i < n_draws; ++i) {
    kernel_sum += std::exp(-sample_pg({b, 0.0}, rng) * half_psi2);
  }
  const double rhs = std::pow(2.0, -b) * std::exp(kappa * psi) *
                     (kernel_sum / static_cast<double>(n_draws));
  return {lhs, rhs};
}

}  // namespace glogit
