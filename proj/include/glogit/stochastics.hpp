#pragma once

#include <Eigen/Dense>

#include "glogit/rng.hpp"

namespace glogit {

/// Gamma(shape, rate) by Marsaglia-Tsang; shape < 1 uses the
/// Gamma(shape + 1) * U^{1/shape} boost.
double sample_gamma(double shape, double rate, RngStream& rng);

enum class TruncSide {
  positive,     // support (0, inf): left-truncated at 0
  nonpositive,  // support (-inf, 0]: right-truncated at 0
};

/// N(mean, variance) restricted to one side of zero.
///
/// Inverse-cdf sampling while the truncation point is less than two standard
/// deviations into the tail, one-sided exponential rejection beyond that.
double sample_trunc_normal(double mean, double variance, TruncSide side,
                           RngStream& rng);

/// mean + L z where covariance = L L^T. Throws NumericError when the
/// covariance is not positive definite.
Eigen::VectorXd sample_mvn(const Eigen::VectorXd& mean,
                           const Eigen::MatrixXd& covariance, RngStream& rng);

/// Draw from N(Q^{-1} r, Q^{-1}) given the precision Q and the linear term r,
/// using only the Cholesky factor of Q.
Eigen::VectorXd sample_mvn_precision(const Eigen::MatrixXd& precision,
                                     const Eigen::VectorXd& linear,
                                     RngStream& rng);

// Polya-Gamma PG(b, c): b is the shape (2p inside the sampler), c the tilt.
struct PGParams {
  double b;
  double c;
};

inline constexpr int kPgTerms = 200;
inline constexpr double kPgFloor = 1e-12;

/// E[PG(b, c)] = b / (2c) * tanh(c / 2), with the c -> 0 limit b / 4.
double pg_mean(double b, double c);

/// Truncated sum-of-gammas Polya-Gamma draw:
///
///   w = 1/(2 pi^2) sum_{k=1..K} g_k / ((k - 1/2)^2 + c^2/(4 pi^2)),
///   g_k ~ Gamma(b, 1),
///
/// plus the exact mean of the omitted tail k > K, so that E[w] = pg_mean(b, c)
/// for every K. The result is floored at kPgFloor.
double sample_pg(const PGParams& params, RngStream& rng, int terms = kPgTerms);

struct PgIdentityCheck {
  double lhs;
  double rhs_estimate;
};

/// Monte-Carlo check of the Polya-Gamma integral identity
///
///   (e^psi)^a / (1 + e^psi)^b = 2^{-b} e^{kappa psi} E[exp(-w psi^2 / 2)],
///
/// with kappa = a - b/2 and w ~ PG(b, 0).
PgIdentityCheck verify_pg_identity(double a, double b, double psi,
                                   long n_draws, RngStream& rng);

}  // namespace glogit
