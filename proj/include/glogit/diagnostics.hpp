#pragma once

#include <span>
#include <string>
#include <vector>

#include "glogit/sampler.hpp"

namespace glogit {

inline constexpr double kGewekeFirst = 0.1;
inline constexpr double kGewekeLast = 0.5;
inline constexpr int kGewekeBatches = 20;
inline constexpr long kGewekeMinLength = 100;
// |z| below this passes the Geweke check.
inline constexpr double kGewekeCritical = 1.96;

/// Geweke's convergence z-score comparing the first `frac_first` and the last
/// `frac_last` of the series:
///
///   z = (mean_A - mean_B) / sqrt(S_A / n_A + S_B / n_B),
///
/// where each long-run variance S is the batch-means estimate over 20
/// non-overlapping batches. Returns NaN for a constant series or when both
/// windows have zero variance. Throws DomainError for series shorter than
/// 100 draws.
double geweke_z(std::span<const double> series, double frac_first = kGewekeFirst,
                double frac_last = kGewekeLast);

/// Sample autocorrelations r_0..r_max_lag with the biased (1/n) estimator.
/// A constant series has r_0 = 1 and r_l = 0 for l >= 1.
std::vector<double> acf(std::span<const double> series, long max_lag);

/// Partial autocorrelations phi_11..phi_LL by Durbin-Levinson, returned with
/// index 0 holding lag 0 (= 1) to line up with acf().
std::vector<double> pacf(std::span<const double> series, long max_lag);

/// n / (1 + 2 sum r_l), the sum stopping before the first negative r_l.
double effective_sample_size(std::span<const double> series);

/// Type-7 (linear interpolation of order statistics) sample quantile.
double quantile(std::span<const double> series, double prob);

struct ParamSummary {
  std::string name;
  std::string label;  // covariate name, when known
  double mean = 0.0;
  double sd = 0.0;
  double q025 = 0.0;
  double q500 = 0.0;
  double q975 = 0.0;
  double geweke_z = 0.0;  // NaN when undefined or the chain is too short
  double ess = 0.0;
};

struct PosteriorSummary {
  std::vector<ParamSummary> params;
};

/// Per-parameter mean, sd (n - 1 denominator), 2.5%/50%/97.5% quantiles,
/// Geweke z with default windows, and effective sample size.
/// `labels`, when non-empty, supplies one covariate label per beta.
PosteriorSummary summarize(const Chain& chain,
                           const std::vector<std::string>& labels = {});

}  // namespace glogit
