#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "glogit/rng.hpp"

namespace glogit {

/// Design matrix plus binary response.
///
/// `x` is n x k; when an intercept is present it is an ordinary column of
/// ones. `names` labels the k columns.
struct Dataset {
  Eigen::MatrixXd x;
  std::vector<int> y;
  std::vector<std::string> names;

  Eigen::Index n() const noexcept { return x.rows(); }
  Eigen::Index k() const noexcept { return x.cols(); }

  /// Checks y in {0, 1}, matching dimensions and n >= k. Throws DataError.
  void validate() const;

  bool has_both_classes() const;
  bool full_column_rank() const;
  // Index of a column whose entries are all exactly 1, if any.
  std::optional<Eigen::Index> constant_one_column() const;

  /// Prepends a column of ones named "const".
  void add_intercept();

  /// FNV-1a digest of the numeric contents (x, y), used in run metadata.
  std::uint64_t digest() const;
};

struct ModelParams {
  Eigen::VectorXd beta;
  double p = 1.0;
};

/// Log density of the symmetric generalized logistic:
/// f(x) = e^{p x} / (B(p, p) (1 + e^x)^{2p}).
double glogistic_logpdf(double x, double p);

/// F(x) = I_{e^x / (1 + e^x)}(p, p).
double glogistic_cdf(double x, double p);

/// P(Y = 1) for linear predictor eta; equal to glogistic_cdf(eta, p).
double success_prob(double eta, double p);

/// Bernoulli log-likelihood with H = glogistic_cdf; each probability is
/// clamped to [1e-300, 1 - 1e-16] before taking logs.
double log_likelihood(const ModelParams& params, const Dataset& data);

/// location + log(G1 / G2), G1, G2 ~ Gamma(p, 1): the logit of a Beta(p, p)
/// draw, which is exactly generalized-logistic distributed.
double sample_glog(double location, double p, RngStream& rng);

/// Intercept column of ones, k - 1 iid standard normal covariates, latent
/// Z_i ~ GLog(x_i' beta, 1) and y_i = 1 iff Z_i > 0.
Dataset simulate_dataset(const Eigen::VectorXd& beta, double p, Eigen::Index n,
                         RngStream& rng);

struct MleResult {
  ModelParams params;
  double log_likelihood = 0.0;
  int evaluations = 0;
  bool converged = false;
};

inline constexpr int kMleMaxEvaluations = 5000;

/// Nelder-Mead maximisation of log_likelihood from beta = 0, p = 1, with p
/// searched on the log scale (kept inside [0.01, 50]). Pass `fixed_p` to hold
/// p constant. Returns the best point found; `converged` is false when the
/// evaluation budget ran out first.
MleResult mle_fit(const Dataset& data, std::optional<double> fixed_p = {},
                  int max_evaluations = kMleMaxEvaluations);

}  // namespace glogit
