#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "glogit/model.hpp"
#include "glogit/rng.hpp"
#include "glogit/specfun.hpp"
#include "glogit/stochastics.hpp"

namespace glogit {

struct FixedP {
  double value;
};

struct GammaPrior {
  double shape = 1.0;
  double rate = 1.0;
};

using PPrior = std::variant<FixedP, GammaPrior>;

/// N(beta_mean, beta_cov) on beta and either a fixed p or a Gamma(shape, rate)
/// prior on p. Construct through make() so the prior precision is cached.
class Priors {
 public:
  static Priors make(Eigen::VectorXd beta_mean, Eigen::MatrixXd beta_cov,
                     PPrior p_prior);
  /// Zero mean, variance * I_k, the default used for the simulation study.
  static Priors isotropic(Eigen::Index k, double variance, PPrior p_prior);

  const Eigen::VectorXd& beta_mean() const noexcept { return beta_mean_; }
  const Eigen::MatrixXd& beta_cov() const noexcept { return beta_cov_; }
  const Eigen::MatrixXd& beta_precision() const noexcept { return beta_precision_; }
  // B^{-1} beta*
  const Eigen::VectorXd& precision_times_mean() const noexcept { return prec_mean_; }
  const PPrior& p_prior() const noexcept { return p_prior_; }

  bool p_fixed() const noexcept { return std::holds_alternative<FixedP>(p_prior_); }
  Eigen::Index k() const noexcept { return beta_mean_.size(); }

 private:
  Priors() = default;

  Eigen::VectorXd beta_mean_;
  Eigen::MatrixXd beta_cov_;
  Eigen::MatrixXd beta_precision_;
  Eigen::VectorXd prec_mean_;
  PPrior p_prior_ = GammaPrior{};
};

/// Current values of the four variable blocks.
struct ChainState {
  Eigen::VectorXd beta;
  double p = 1.0;
  Eigen::VectorXd z;      // latent utilities, sign matches y
  Eigen::VectorXd omega;  // Polya-Gamma auxiliaries, >= kPgFloor
};

enum class InitMode { zero, mle, explicit_params };

struct SamplerConfig {
  long n_iter = 20000;
  long burn_in = 5000;
  long thin = 1;
  std::uint64_t seed = 1;
  std::uint64_t stream_id = 0;
  InitMode init = InitMode::zero;
  std::optional<ModelParams> init_params;  // used with InitMode::explicit_params
  RealInterval p_bounds{0.01, 50.0};
  int pg_terms = kPgTerms;

  void validate() const;
  long stored_draws() const noexcept { return (n_iter - burn_in) / thin; }
};

struct ChainMeta {
  SamplerConfig config;
  std::uint64_t dataset_digest = 0;
  double wall_seconds = 0.0;
  long slice_fallbacks = 0;
  bool p_fixed = false;
  std::vector<std::string> warnings;
};

/// Stored draws after burn-in and thinning.
///
/// Row r of `draws` is (beta_0, ..., beta_{k-1}, p) at sweep iters[r].
struct Chain {
  Eigen::MatrixXd draws;
  std::vector<long> iters;
  std::vector<std::string> param_names;
  ChainMeta meta;

  Eigen::Index size() const noexcept { return draws.rows(); }
  Eigen::Index k() const noexcept { return draws.cols() - 1; }
};

/// Z_i ~ N(x_i' beta, 1/omega_i) truncated to (0, inf) when y_i = 1 and to
/// (-inf, 0] when y_i = 0.
void update_z(ChainState& state, const Dataset& data, RngStream& rng);

/// omega_i ~ PG(2p, z_i - x_i' beta), floored at kPgFloor.
void update_omega(ChainState& state, const Dataset& data, RngStream& rng,
                  int pg_terms = kPgTerms);

struct BetaConditional {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

/// Parameters of the Gaussian full conditional of beta:
/// V = (X' W X + B^{-1})^{-1}, m = V (X' W z + B^{-1} beta*), W = diag(omega).
/// Intended for inspection and tests; the sampler never forms V.
BetaConditional beta_conditional(const ChainState& state, const Dataset& data,
                                 const Priors& priors);

/// beta ~ N(m, V) drawn from the Cholesky factor of V^{-1}.
void update_beta(ChainState& state, const Dataset& data, const Priors& priors,
                 RngStream& rng);

// Sufficient statistics of the residuals eta_i = z_i - x_i' beta for the
// omega-marginalised conditional of p.
struct ResidualStats {
  long n = 0;
  double sum = 0.0;           // sum eta_i
  double sum_log1p_exp = 0.0;  // sum log(1 + e^{eta_i})
};

ResidualStats residual_stats(const Eigen::VectorXd& residuals);
ResidualStats residual_stats(const ChainState& state, const Dataset& data);

/// Log of the conditional of p with the omegas integrated out, up to a
/// constant:
///   (a - 1) log p - b p - n log B(p, p) + p sum eta - 2p sum log(1 + e^eta).
double log_cond_p(double p, const ResidualStats& stats, const GammaPrior& prior);

/// One slice-sampling move for p on fixed residual statistics.
///
/// The slice {p : log_cond_p(p) > u} is located by root finding on each side
/// of p0 inside `bounds`; a bound is used directly when the slice reaches it.
/// If the root finder fails, the interval comes from stepping out instead and
/// `fallbacks` (when given) is incremented. Shrinkage handles rejections.
double slice_sample_p(double p0, const ResidualStats& stats,
                      const GammaPrior& prior, const RealInterval& bounds,
                      RngStream& rng, long* fallbacks = nullptr);

/// p update from its omega-marginalised conditional. No-op for a fixed p.
void update_p_slice(ChainState& state, const Dataset& data, const Priors& priors,
                    const RealInterval& bounds, RngStream& rng,
                    long* fallbacks = nullptr);

/// One full sweep: z, then p (if free) and omega, then beta.
void gibbs_sweep(ChainState& state, const Dataset& data, const Priors& priors,
                 const SamplerConfig& config, RngStream& rng,
                 long* fallbacks = nullptr);

/// Starting state per config.init: beta and p, then z from one update_z
/// pass with omega = 1, then omega from one update_omega pass.
ChainState initial_state(const Dataset& data, const Priors& priors,
                         const SamplerConfig& config, RngStream& rng);

/// Log of the augmented posterior density of (beta, p, z, omega), up to a
/// constant. -inf when a z_i has the wrong sign.
double log_augmented_density(const ChainState& state, const Dataset& data,
                             const Priors& priors);

/// Log density of PG(b, 0) at x > 0 (alternating series).
double pg_log_density(double x, double b);

/// Runs the Gibbs sampler. Fully determined by (data, priors, config).
Chain run_chain(const Dataset& data, const Priors& priors,
                const SamplerConfig& config);

}  // namespace glogit
