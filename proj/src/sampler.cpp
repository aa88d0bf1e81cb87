#include "glogit/sampler.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "glogit/errors.hpp"

namespace glogit {

namespace {

constexpr double kSliceTol = 1e-8;
// Outward padding of located slice endpoints so the interval covers the
// slice despite the root tolerance; shrinkage discards the excess.
constexpr double kSlicePad = 1e-7;
constexpr double kStepOutWidth = 1.0;

const GammaPrior& gamma_prior_of(const Priors& priors) {
  return std::get<GammaPrior>(priors.p_prior());
}

}  // namespace

Priors Priors::make(Eigen::VectorXd beta_mean, Eigen::MatrixXd beta_cov,
                    PPrior p_prior) {
  const auto k = beta_mean.size();
  if (k < 1) throw DomainError("prior mean must be non-empty");
  if (beta_cov.rows() != k || beta_cov.cols() != k) {
    throw DomainError("prior covariance dimensions do not match the prior mean");
  }
  if (!beta_cov.isApprox(beta_cov.transpose(), 1e-12)) {
    throw DomainError("prior covariance must be symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(beta_cov);
  if (llt.info() != Eigen::Success) {
    throw DomainError("prior covariance must be positive definite");
  }
  if (const auto* fixed = std::get_if<FixedP>(&p_prior)) {
    if (!(fixed->value > 0.0) || !std::isfinite(fixed->value)) {
      throw DomainError("fixed p must be positive");
    }
  } else {
    const auto& g = std::get<GammaPrior>(p_prior);
    if (!(g.shape > 0.0) || !(g.rate > 0.0)) {
      throw DomainError("Gamma prior hyperparameters must be positive");
    }
  }
  Priors priors;
  priors.beta_precision_ = llt.solve(Eigen::MatrixXd::Identity(k, k));
  priors.prec_mean_ = llt.solve(beta_mean);
  priors.beta_mean_ = std::move(beta_mean);
  priors.beta_cov_ = std::move(beta_cov);
  priors.p_prior_ = p_prior;
  return priors;
}

Priors Priors::isotropic(Eigen::Index k, double variance, PPrior p_prior) {
  if (!(variance > 0.0)) throw DomainError("prior variance must be positive");
  return make(Eigen::VectorXd::Zero(k),
              variance * Eigen::MatrixXd::Identity(k, k), p_prior);
}

void SamplerConfig::validate() const {
  if (n_iter < 1) throw DomainError("n_iter must be at least 1");
  if (burn_in < 0 || burn_in >= n_iter) {
    throw DomainError("burn_in must satisfy 0 <= burn_in < n_iter");
  }
  if (thin < 1) throw DomainError("thin must be at least 1");
  if (!(p_bounds.lo() > 0.0)) throw DomainError("p bounds must be positive");
  if (pg_terms < 1) throw DomainError("pg_terms must be at least 1");
  if (init == InitMode::explicit_params && !init_params) {
    throw DomainError("explicit initialisation needs init_params");
  }
}

void update_z(ChainState& state, const Dataset& data, RngStream& rng) {
  const Eigen::VectorXd eta = data.x * state.beta;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    const TruncSide side = data.y[static_cast<std::size_t>(i)] == 1
                               ? TruncSide::positive
                               : TruncSide::nonpositive;
    state.z[i] = sample_trunc_normal(eta[i], 1.0 / state.omega[i], side, rng);
  }
}

void update_omega(ChainState& state, const Dataset& data, RngStream& rng,
                  int pg_terms) {
  const Eigen::VectorXd eta = data.x * state.beta;
  const double b = 2.0 * state.p;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    state.omega[i] = sample_pg({b, state.z[i] - eta[i]}, rng, pg_terms);
  }
}

namespace {

// Precision X' W X + B^{-1} and linear term X' W z + B^{-1} beta*.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> beta_precision_terms(
    const ChainState& state, const Dataset& data, const Priors& priors) {
  const Eigen::MatrixXd weighted = state.omega.asDiagonal() * data.x;
  Eigen::MatrixXd precision = priors.beta_precision();
  precision.noalias() += data.x.transpose() * weighted;
  Eigen::VectorXd linear = priors.precision_times_mean();
  linear.noalias() += weighted.transpose() * state.z;
  return {std::move(precision), std::move(linear)};
}

}  // namespace

BetaConditional beta_conditional(const ChainState& state, const Dataset& data,
                                 const Priors& priors) {
  const auto [precision, linear] = beta_precision_terms(state, data, priors);
  Eigen::LLT<Eigen::MatrixXd> llt(precision);
  if (llt.info() != Eigen::Success) {
    throw NumericError("beta full-conditional precision is not positive definite");
  }
  const auto k = precision.rows();
  return {llt.solve(linear), llt.solve(Eigen::MatrixXd::Identity(k, k))};
}

void update_beta(ChainState& state, const Dataset& data, const Priors& priors,
                 RngStream& rng) {
  const auto [precision, linear] = beta_precision_terms(state, data, priors);
  state.beta = sample_mvn_precision(precision, linear, rng);
}

ResidualStats residual_stats(const Eigen::VectorXd& residuals) {
  ResidualStats stats;
  stats.n = static_cast<long>(residuals.size());
  for (Eigen::Index i = 0; i < residuals.size(); ++i) {
    stats.sum += residuals[i];
    stats.sum_log1p_exp += log1p_exp(residuals[i]);
  }
  return stats;
}

ResidualStats residual_stats(const ChainState& state, const Dataset& data) {
  return residual_stats(Eigen::VectorXd(state.z - data.x * state.beta));
}

double log_cond_p(double p, const ResidualStats& stats, const GammaPrior& prior) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw DomainError("log_cond_p needs p > 0");
  }
  const double n = static_cast<double>(stats.n);
  double value = (prior.shape - 1.0) * std::log(p) - prior.rate * p;
  if (stats.n > 0) {
    value += -n * log_beta(p, p) + p * stats.sum - 2.0 * p * stats.sum_log1p_exp;
  }
  return value;
}

double slice_sample_p(double p0, const ResidualStats& stats,
                      const GammaPrior& prior, const RealInterval& bounds,
                      RngStream& rng, long* fallbacks) {
  if (!(p0 > bounds.lo() && p0 < bounds.hi())) {
    std::ostringstream os;
    os << "slice sampler start p=" << p0 << " is not inside (" << bounds.lo()
       << ", " << bounds.hi() << ")";
    throw DomainError(os.str());
  }
  auto logf = [&](double p) { return log_cond_p(p, stats, prior); };
  const double level = logf(p0) + std::log(rng.uniform());
  auto above = [&](double p) { return logf(p) - level; };

  double left = bounds.lo();
  double right = bounds.hi();
  try {
    if (above(bounds.lo()) < 0.0) {
      left = std::max(bounds.lo(),
                      find_root(above, {bounds.lo(), p0}, kSliceTol) - kSlicePad);
    }
    if (above(bounds.hi()) < 0.0) {
      right = std::min(bounds.hi(),
                       find_root(above, {p0, bounds.hi()}, kSliceTol) + kSlicePad);
    }
  } catch (const RootError&) {
    if (fallbacks) ++*fallbacks;
    // Neal's stepping out, clipped to the bounds.
    left = p0 - kStepOutWidth * rng.uniform();
    right = left + kStepOutWidth;
    while (left > bounds.lo() && above(left) > 0.0) left -= kStepOutWidth;
    while (right < bounds.hi() && above(right) > 0.0) right += kStepOutWidth;
    left = std::max(left, bounds.lo());
    right = std::min(right, bounds.hi());
  }

  for (;;) {
    const double candidate = left + rng.uniform() * (right - left);
    if (candidate > bounds.lo() && candidate < bounds.hi() && above(candidate) > 0.0) {
      return candidate;
    }
    if (candidate < p0) {
      left = candidate;
    } else {
      right = candidate;
    }
  }
}

void update_p_slice(ChainState& state, const Dataset& data, const Priors& priors,
                    const RealInterval& bounds, RngStream& rng, long* fallbacks) {
  if (priors.p_fixed()) return;
  state.p = slice_sample_p(state.p, residual_stats(state, data),
                           gamma_prior_of(priors), bounds, rng, fallbacks);
}

void gibbs_sweep(ChainState& state, const Dataset& data, const Priors& priors,
                 const SamplerConfig& config, RngStream& rng, long* fallbacks) {
  update_z(state, data, rng);
  // p is drawn with omega integrated out, so omega must be redrawn at the new
  // p before anything conditions on it: (p, omega) form one block.
  update_p_slice(state, data, priors, config.p_bounds, rng, fallbacks);
  update_omega(state, data, rng, config.pg_terms);
  update_beta(state, data, priors, rng);
}

ChainState initial_state(const Dataset& data, const Priors& priors,
                         const SamplerConfig& config, RngStream& rng) {
  const auto* fixed = std::get_if<FixedP>(&priors.p_prior());
  ChainState state;
  switch (config.init) {
    case InitMode::zero:
      state.beta = Eigen::VectorXd::Zero(data.k());
      state.p = 1.0;
      break;
    case InitMode::mle: {
      const MleResult mle =
          mle_fit(data, fixed ? std::optional<double>(fixed->value) : std::nullopt);
      state.beta = mle.params.beta;
      state.p = mle.params.p;
      break;
    }
    case InitMode::explicit_params:
      state.beta = config.init_params->beta;
      state.p = config.init_params->p;
      if (state.beta.size() != data.k()) {
        throw DomainError("initial beta has the wrong dimension");
      }
      break;
  }
  if (fixed) {
    state.p = fixed->value;
  } else {
    // The slice move needs a start strictly inside the bounds.
    const double margin = 1e-6 * config.p_bounds.width();
    state.p = std::clamp(state.p, config.p_bounds.lo() + margin,
                         config.p_bounds.hi() - margin);
  }
  state.omega = Eigen::VectorXd::Ones(data.n());
  state.z = Eigen::VectorXd::Zero(data.n());
  update_z(state, data, rng);
  update_omega(state, data, rng, config.pg_terms);
  return state;
}

double pg_log_density(double x, double b) {
  if (!(x > 0.0) || !(b > 0.0)) throw DomainError("pg_log_density needs x, b > 0");
  // p(x | b, 0) = 2^{b-1} / Gamma(b) sum_n (-1)^n Gamma(n+b) / n!
  //               * (2n + b) / sqrt(2 pi x^3) exp(-(2n + b)^2 / (8x))
  constexpr int kMaxTerms = 5000;
  const double log_const = (b - 1.0) * std::numbers::ln2 - log_gamma(b) -
                           0.5 * std::log(2.0 * std::numbers::pi * x * x * x);
  auto log_term = [&](int n) {
    const double m = 2.0 * n + b;
    return log_gamma(n + b) - log_gamma(n + 1.0) + std::log(m) - m * m / (8.0 * x);
  };
  const double lead = log_term(0);
  long double sum = 0.0L;
  double largest = 0.0;  // log of the largest term relative to the lead
  bool converged = false;
  for (int n = 0; n < kMaxTerms; ++n) {
    const double rel = log_term(n) - lead;
    largest = std::max(largest, rel);
    const long double term = std::exp(static_cast<long double>(rel));
    sum += (n % 2 == 0) ? term : -term;
    // Terms eventually decrease monotonically; stop once negligible.
    if (n > 2 && rel < largest - 45.0 && 2.0 * n + b > std::sqrt(8.0 * x)) {
      converged = true;
      break;
    }
  }
  // Far in the right tail the series cancels to rounding noise. There the
  // slowest gamma component dominates:
  //   p(x) ~ (pi/4)^{-b} d^b x^{b-1} e^{-d x} / Gamma(b),  d = pi^2 / 2.
  if (!converged || !(sum > 0.0L) ||
      std::log(static_cast<double>(sum)) < largest - 25.0) {
    const double d = 0.5 * std::numbers::pi * std::numbers::pi;
    return -b * std::log(0.25 * std::numbers::pi) + b * std::log(d) +
           (b - 1.0) * std::log(x) - d * x - log_gamma(b);
  }
  return log_const + lead + std::log(static_cast<double>(sum));
}

double log_augmented_density(const ChainState& state, const Dataset& data,
                             const Priors& priors) {
  const Eigen::VectorXd centred = state.beta - priors.beta_mean();
  double value = -0.5 * centred.dot(priors.beta_precision() * centred);
  if (const auto* g = std::get_if<GammaPrior>(&priors.p_prior())) {
    value += (g->shape - 1.0) * std::log(state.p) - g->rate * state.p;
  }
  const double p = state.p;
  const double per_obs = -2.0 * p * std::numbers::ln2 - log_beta(p, p);
  const Eigen::VectorXd eta = data.x * state.beta;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    const bool positive = state.z[i] > 0.0;
    if (positive != (data.y[static_cast<std::size_t>(i)] == 1)) {
      return -std::numeric_limits<double>::infinity();
    }
    const double r = state.z[i] - eta[i];
    value += per_obs - 0.5 * state.omega[i] * r * r +
             pg_log_density(state.omega[i], 2.0 * p);
  }
  return value;
}

Chain run_chain(const Dataset& data, const Priors& priors,
                const SamplerConfig& config) {
  data.validate();
  config.validate();
  if (!data.has_both_classes()) {
    throw DataError("response has a single class; both 0 and 1 are required");
  }
  if (priors.k() != data.k()) {
    std::ostringstream os;
    os << "prior has dimension " << priors.k() << " but X has " << data.k()
       << " columns";
    throw DataError(os.str());
  }

  const auto started = std::chrono::steady_clock::now();
  Chain chain;
  chain.meta.config = config;
  chain.meta.dataset_digest = data.digest();
  chain.meta.p_fixed = priors.p_fixed();
  if (!data.full_column_rank()) {
    chain.meta.warnings.push_back("design matrix is not of full column rank");
  }
  for (Eigen::Index j = 0; j < data.k(); ++j) {
    chain.param_names.push_back("beta_" + std::to_string(j));
  }
  chain.param_names.push_back("p");

  const long stored = config.stored_draws();
  chain.draws.resize(stored, data.k() + 1);
  chain.iters.reserve(static_cast<std::size_t>(stored));

  RngStream rng(config.seed, config.stream_id);
  ChainState state = initial_state(data, priors, config, rng);
  long row = 0;
  for (long sweep = 1; sweep <= config.n_iter; ++sweep) {
    try {
      gibbs_sweep(state, data, priors, config, rng, &chain.meta.slice_fallbacks);
    } catch (const NumericError& e) {
      throw NumericError("sweep " + std::to_string(sweep) + ": " + e.what());
    } catch (const DomainError& e) {
      throw DomainError("sweep " + std::to_string(sweep) + ": " + e.what());
    }
    if (sweep > config.burn_in && (sweep - config.burn_in) % config.thin == 0 &&
        row < stored) {
      chain.draws.row(row).head(data.k()) = state.beta.transpose();
      chain.draws(row, data.k()) = state.p;
      chain.iters.push_back(sweep);
      ++row;
    }
  }
  chain.meta.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return chain;
}

}  // namespace glogit
