#include "glogit/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "glogit/errors.hpp"

namespace glogit {

namespace {

double mean_of(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

// Batch-means estimate of the long-run variance of a window.
double batch_means_variance(std::span<const double> window) {
  const std::size_t batch = window.size() / kGewekeBatches;
  // Use the most recent kGewekeBatches * batch draws of the window.
  const auto used = window.last(batch * kGewekeBatches);
  std::vector<double> means(kGewekeBatches);
  for (int b = 0; b < kGewekeBatches; ++b) {
    means[static_cast<std::size_t>(b)] = mean_of(used.subspan(static_cast<std::size_t>(b) * batch, batch));
  }
  const double grand = mean_of(means);
  double ss = 0.0;
  for (double m : means) ss += (m - grand) * (m - grand);
  return static_cast<double>(batch) * ss / (kGewekeBatches - 1);
}

void check_lag(std::size_t length, long max_lag) {
  if (max_lag < 0 || 2 * static_cast<std::size_t>(max_lag) >= length) {
    std::ostringstream os;
    os << "max_lag " << max_lag << " must be below half the series length "
       << length;
    throw DomainError(os.str());
  }
}

}  // namespace

double geweke_z(std::span<const double> series, double frac_first,
                double frac_last) {
  if (static_cast<long>(series.size()) < kGewekeMinLength) {
    std::ostringstream os;
    os << "geweke_z needs at least " << kGewekeMinLength << " draws, got "
       << series.size();
    throw DomainError(os.str());
  }
  if (!(frac_first > 0.0) || !(frac_last > 0.0) || frac_first + frac_last > 1.0) {
    throw DomainError("geweke_z window fractions must be positive and sum to <= 1");
  }
  const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
  if (*lo == *hi) return std::numeric_limits<double>::quiet_NaN();
  const auto n = series.size();
  const auto n_first = static_cast<std::size_t>(std::floor(frac_first * n));
  const auto n_last = static_cast<std::size_t>(std::floor(frac_last * n));
  const auto first = series.first(n_first);
  const auto last = series.last(n_last);
  const double var_first = batch_means_variance(first);
  const double var_last = batch_means_variance(last);
  const double denom = var_first / n_first + var_last / n_last;
  if (!(denom > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return (mean_of(first) - mean_of(last)) / std::sqrt(denom);
}

std::vector<double> acf(std::span<const double> series, long max_lag) {
  check_lag(series.size(), max_lag);
  const double m = mean_of(series);
  const std::size_t n = series.size();
  double c0 = 0.0;
  for (double v : series) c0 += (v - m) * (v - m);
  std::vector<double> r(static_cast<std::size_t>(max_lag) + 1, 0.0);
  r[0] = 1.0;
  if (!(c0 > 0.0)) return r;
  for (std::size_t lag = 1; lag <= static_cast<std::size_t>(max_lag); ++lag) {
    double c = 0.0;
    for (std::size_t t = 0; t + lag < n; ++t) c += (series[t] - m) * (series[t + lag] - m);
    r[lag] = c / c0;
  }
  return r;
}

std::vector<double> pacf(std::span<const double> series, long max_lag) {
  const std::vector<double> r = acf(series, max_lag);
  const auto L = static_cast<std::size_t>(max_lag);
  std::vector<double> out(L + 1, 0.0);
  out[0] = 1.0;
  if (L == 0) return out;
  std::vector<double> phi(L + 1, 0.0);
  std::vector<double> prev(L + 1, 0.0);
  phi[1] = r[1];
  out[1] = r[1];
  double v = 1.0 - r[1] * r[1];
  for (std::size_t k = 2; k <= L; ++k) {
    prev = phi;
    double num = r[k];
    for (std::size_t j = 1; j < k; ++j) num -= prev[j] * r[k - j];
    const double phikk = v > 0.0 ? num / v : 0.0;
    phi[k] = phikk;
    for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - phikk * prev[k - j];
    v *= 1.0 - phikk * phikk;
    out[k] = phikk;
  }
  return out;
}

double effective_sample_size(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 2) return static_cast<double>(n);
  const double m = mean_of(series);
  double c0 = 0.0;
  for (double v : series) c0 += (v - m) * (v - m);
  if (!(c0 > 0.0)) return static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t lag = 1; lag < n; ++lag) {
    double c = 0.0;
    for (std::size_t t = 0; t + lag < n; ++t) c += (series[t] - m) * (series[t + lag] - m);
    const double r = c / c0;
    if (r < 0.0) break;
    sum += r;
  }
  return static_cast<double>(n) / (1.0 + 2.0 * sum);
}

double quantile(std::span<const double> series, double prob) {
  if (series.empty()) throw DomainError("quantile of an empty series");
  if (!(prob >= 0.0 && prob <= 1.0)) throw DomainError("quantile prob must be in [0, 1]");
  std::vector<double> sorted(series.begin(), series.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = prob * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

PosteriorSummary summarize(const Chain& chain,
                           const std::vector<std::string>& labels) {
  if (chain.size() == 0) throw DomainError("cannot summarise an empty chain");
  PosteriorSummary summary;
  const auto n = static_cast<std::size_t>(chain.size());
  std::vector<double> column(n);
  for (Eigen::Index j = 0; j < chain.draws.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) column[i] = chain.draws(static_cast<Eigen::Index>(i), j);
    ParamSummary ps;
    ps.name = j < static_cast<Eigen::Index>(chain.param_names.size())
                  ? chain.param_names[static_cast<std::size_t>(j)]
                  : "param_" + std::to_string(j);
    if (j < chain.k() && static_cast<std::size_t>(j) < labels.size()) {
      ps.label = labels[static_cast<std::size_t>(j)];
    } else if (j == chain.k()) {
      ps.label = "p";
    }
    ps.mean = mean_of(column);
    double ss = 0.0;
    for (double v : column) ss += (v - ps.mean) * (v - ps.mean);
    ps.sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    ps.q025 = quantile(column, 0.025);
    ps.q500 = quantile(column, 0.5);
    ps.q975 = quantile(column, 0.975);
    ps.geweke_z = static_cast<long>(n) >= kGewekeMinLength
                      ? geweke_z(column)
                      : std::numeric_limits<double>::quiet_NaN();
    ps.ess = effective_sample_size(column);
    summary.params.push_back(std::move(ps));
  }
  return summary;
}

}  // namespace glogit
