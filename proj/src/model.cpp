#include "glogit/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include "glogit/errors.hpp"
#include "glogit/specfun.hpp"
#include "glogit/stochastics.hpp"

namespace glogit {

namespace {

constexpr double kProbLo = 1e-300;
constexpr double kProbHi = 1.0 - 1e-16;

void require_shape(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    std::ostringstream os;
    os << "tail parameter p must be positive and finite, got " << p;
    throw DomainError(os.str());
  }
}

void fnv1a(std::uint64_t& h, const void* data, std::size_t len) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 0x100000001B3ULL;
  }
}

}  // namespace

void Dataset::validate() const {
  if (static_cast<Eigen::Index>(y.size()) != x.rows()) {
    std::ostringstream os;
    os << "response has " << y.size() << " entries but X has " << x.rows()
       << " rows";
    throw DataError(os.str());
  }
  if (!names.empty() && static_cast<Eigen::Index>(names.size()) != x.cols()) {
    throw DataError("column names do not match the number of covariates");
  }
  if (x.cols() < 1) throw DataError("dataset has no covariates");
  if (x.rows() < x.cols()) {
    std::ostringstream os;
    os << "need n >= k, got n=" << x.rows() << ", k=" << x.cols();
    throw DataError(os.str());
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] != 0 && y[i] != 1) {
      std::ostringstream os;
      os << "response must be 0 or 1; row " << i + 1 << " has " << y[i];
      throw DataError(os.str());
    }
  }
  if (!x.allFinite()) throw DataError("design matrix has non-finite entries");
}

bool Dataset::has_both_classes() const {
  const bool any_one = std::find(y.begin(), y.end(), 1) != y.end();
  const bool any_zero = std::find(y.begin(), y.end(), 0) != y.end();
  return any_one && any_zero;
}

bool Dataset::full_column_rank() const {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  return qr.rank() == x.cols();
}

std::optional<Eigen::Index> Dataset::constant_one_column() const {
  if (x.rows() == 0) return std::nullopt;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    if ((x.col(j).array() == 1.0).all()) return j;
  }
  return std::nullopt;
}

void Dataset::add_intercept() {
  if (names.empty()) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) names.push_back("x" + std::to_string(j));
  }
  Eigen::MatrixXd widened(x.rows(), x.cols() + 1);
  widened.col(0).setOnes();
  widened.rightCols(x.cols()) = x;
  x = std::move(widened);
  names.insert(names.begin(), "const");
}

std::uint64_t Dataset::digest() const {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  const std::int64_t dims[2] = {x.rows(), x.cols()};
  fnv1a(h, dims, sizeof dims);
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double v = x(i, j);
      fnv1a(h, &v, sizeof v);
    }
  }
  for (int v : y) fnv1a(h, &v, sizeof v);
  return h;
}

double glogistic_logpdf(double x, double p) {
  require_shape(p);
  if (!std::isfinite(x)) throw DomainError("glogistic_logpdf needs finite x");
  return -log_beta(p, p) + p * x - 2.0 * p * log1p_exp(x);
}

double glogistic_cdf(double x, double p) {
  require_shape(p);
  if (std::isnan(x)) throw DomainError("glogistic_cdf argument is NaN");
  // Evaluate in the lower half where t = logistic(x) <= 1/2 is accurate,
  // then reflect through the symmetry F(x) = 1 - F(-x).
  if (x > 0.0) return 1.0 - glogistic_cdf(-x, p);
  return reg_inc_beta(logistic(x), logistic(-x), p, p);
}

double success_prob(double eta, double p) { return glogistic_cdf(eta, p); }

double log_likelihood(const ModelParams& params, const Dataset& data) {
  if (params.beta.size() != data.k()) {
    std::ostringstream os;
    os << "beta has " << params.beta.size() << " entries but X has "
       << data.k() << " columns";
    throw DataError(os.str());
  }
  if (static_cast<Eigen::Index>(data.y.size()) != data.n()) {
    throw DataError("response length does not match X");
  }
  require_shape(params.p);
  const Eigen::VectorXd eta = data.x * params.beta;
  double ll = 0.0;
  for (Eigen::Index i = 0; i < data.n(); ++i) {
    // 1 - H(eta) = H(-eta) by symmetry; evaluating it directly avoids
    // cancellation for large eta.
    const double prob = data.y[i] == 1 ? glogistic_cdf(eta[i], params.p)
                                       : glogistic_cdf(-eta[i], params.p);
    ll += std::log(std::clamp(prob, kProbLo, kProbHi));
  }
  return ll;
}

double sample_glog(double location, double p, RngStream& rng) {
  require_shape(p);
  const double g1 = sample_gamma(p, 1.0, rng);
  const double g2 = sample_gamma(p, 1.0, rng);
  return location + (std::log(g1) - std::log(g2));
}

Dataset simulate_dataset(const Eigen::VectorXd& beta, double p, Eigen::Index n,
                         RngStream& rng) {
  require_shape(p);
  if (n < 1) throw DomainError("simulate_dataset needs n >= 1");
  if (beta.size() < 1) throw DomainError("simulate_dataset needs a non-empty beta");
  const Eigen::Index k = beta.size();
  Dataset data;
  data.x.resize(n, k);
  data.y.resize(static_cast<std::size_t>(n));
  // Row-wise generation keeps each observation's draws contiguous in the
  // stream, so a prefix of a larger simulation reproduces a smaller one.
  for (Eigen::Index i = 0; i < n; ++i) {
    data.x(i, 0) = 1.0;
    for (Eigen::Index j = 1; j < k; ++j) data.x(i, j) = rng.normal();
    const double z = sample_glog(data.x.row(i).dot(beta), p, rng);
    data.y[static_cast<std::size_t>(i)] = z > 0.0 ? 1 : 0;
  }
  for (Eigen::Index j = 0; j < k; ++j) data.names.push_back("x" + std::to_string(j));
  return data;
}

}  // namespace glogit
