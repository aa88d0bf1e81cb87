#pragma once

#include <cmath>
#include <functional>

namespace glogit {

// Closed, finite search interval with lo < hi.
class RealInterval {
 public:
  RealInterval(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }
  bool contains(double x) const noexcept { return x >= lo_ && x <= hi_; }

 private:
  double lo_;
  double hi_;
};

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// ln B(a, b) = lgamma(a) + lgamma(b) - lgamma(a + b).
double log_beta(double a, double b);

/// Regularized incomplete beta I_t(a, b) = B(t; a, b) / B(a, b).
///
/// Evaluated by the Lentz continued fraction, switching to the
/// complementary form 1 - I_{1-t}(b, a) when t is above the mean a/(a+b).
double reg_inc_beta(double t, double a, double b);

/// Same as reg_inc_beta, but takes both t and 1 - t so callers that know the
/// complement more accurately than `1 - t` (e.g. from a logistic transform)
/// do not lose precision near t = 1.
double reg_inc_beta(double t, double one_minus_t, double a, double b);

/// Standard normal cdf.
double normal_cdf(double x);

/// Standard normal quantile (Wichura's AS 241, about 1e-16 relative).
double normal_quantile(double prob);

inline constexpr int kRootMaxIter = 200;
inline constexpr double kRootTol = 1e-12;

/// Brent's method on a bracket with a sign change.
///
/// Returns x inside `bracket` with |f(x)| <= tol or a final bracket narrower
/// than tol. Throws RootError when f(lo) and f(hi) share a sign or when
/// max_iter iterations do not converge.
double find_root(const std::function<double(double)>& f,
                 const RealInterval& bracket, double tol = kRootTol,
                 int max_iter = kRootMaxIter);

// Numerically stable log(1 + e^x).
inline double log1p_exp(double x) noexcept {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

// 1 / (1 + e^{-x}) without overflow.
inline double logistic(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace glogit
