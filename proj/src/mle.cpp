#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "glogit/errors.hpp"
#include "glogit/model.hpp"

namespace glogit {

namespace {

constexpr double kLogPLo = -4.605170185988091;  // log(0.01)
constexpr double kLogPHi = 3.912023005428146;   // log(50)

struct SimplexResult {
  Eigen::VectorXd point;
  double value;
  int evaluations;
  bool converged;
};

// Plain Nelder-Mead minimiser (reflection 1, expansion 2, contraction 1/2,
// shrink 1/2).
SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                          const Eigen::VectorXd& start, double step,
                          int max_evaluations) {
  const Eigen::Index d = start.size();
  std::vector<Eigen::VectorXd> simplex(static_cast<std::size_t>(d + 1), start);
  std::vector<double> values(static_cast<std::size_t>(d + 1));
  int evals = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++evals;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };
  for (Eigen::Index i = 0; i < d; ++i) simplex[static_cast<std::size_t>(i + 1)][i] += step;
  for (std::size_t i = 0; i < simplex.size(); ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(simplex.size());
  bool converged = false;
  while (evals < max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[order.size() - 2];

    double spread = 0.0;
    for (const auto& v : simplex) spread = std::max(spread, (v - simplex[best]).cwiseAbs().maxCoeff());
    const double fspread = values[worst] - values[best];
    if (spread < 1e-8 && fspread < 1e-10 * (1.0 + std::fabs(values[best]))) {
      converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= static_cast<double>(d);

    const Eigen::VectorXd reflected = centroid + (centroid - simplex[worst]);
    const double f_reflected = eval(reflected);
    if (f_reflected < values[best]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - simplex[worst]);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        values[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = f_reflected;
      continue;
    }
    const bool outside = f_reflected < values[worst];
    const Eigen::VectorXd contracted =
        outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                : Eigen::VectorXd(centroid + 0.5 * (simplex[worst] - centroid));
    const double f_contracted = eval(contracted);
    if (f_contracted < std::min(f_reflected, values[worst])) {
      simplex[worst] = contracted;
      values[worst] = f_contracted;
      continue;
    }
    for (std::size_t i = 0; i < simplex.size(); ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + 0.5 * (simplex[i] - simplex[best]);
      values[i] = eval(simplex[i]);
    }
  }
  const auto best_it = std::min_element(values.begin(), values.end());
  const auto best = static_cast<std::size_t>(best_it - values.begin());
  return {simplex[best], values[best], evals, converged};
}

}  // namespace

MleResult mle_fit(const Dataset& data, std::optional<double> fixed_p,
                  int max_evaluations) {
  data.validate();
  if (data.n() <= data.k()) throw DataError("mle_fit needs n > k");
  if (!data.has_both_classes()) {
    throw DataError("mle_fit needs both response classes");
  }
  if (fixed_p && !(*fixed_p > 0.0)) throw DomainError("fixed p must be positive");

  const Eigen::Index k = data.k();
  const bool free_p = !fixed_p.has_value();
  auto unpack = [&](const Eigen::VectorXd& theta) {
    ModelParams params{theta.head(k), fixed_p.value_or(1.0)};
    if (free_p) params.p = std::exp(std::clamp(theta[k], kLogPLo, kLogPHi));
    return params;
  };
  auto objective = [&](const Eigen::VectorXd& theta) {
    return -log_likelihood(unpack(theta), data);
  };

  Eigen::VectorXd start = Eigen::VectorXd::Zero(free_p ? k + 1 : k);
  const double start_value = objective(start);
  int budget = max_evaluations - 1;

  // One restart from the first optimum guards against a collapsed simplex.
  SimplexResult result = nelder_mead(objective, start, 1.0, budget);
  budget -= result.evaluations;
  if (budget > 0) {
    SimplexResult again = nelder_mead(objective, result.point, 0.1, budget);
    const int used = result.evaluations + again.evaluations;
    if (again.value <= result.value) result = again;
    result.evaluations = used;
  }
  if (!(result.value <= start_value)) {
    result.point = start;
    result.value = start_value;
  }

  MleResult out;
  out.params = unpack(result.point);
  out.log_likelihood = -result.value;
  out.evaluations = result.evaluations + 1;
  out.converged = result.converged;
  return out;
}

}  // namespace glogit
