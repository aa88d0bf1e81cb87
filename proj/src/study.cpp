#include "glogit/study.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "glogit/diagnostics.hpp"
#include "glogit/errors.hpp"
#include "glogit/io.hpp"

namespace glogit {

namespace fs = std::filesystem;

Eigen::VectorXd scenario_beta(int scenario) {
  Eigen::VectorXd beta;
  if (scenario == 1) {
    beta.resize(5);
    beta << 1, -1, -3, 1, 3;
  } else if (scenario == 2) {
    beta.resize(10);
    beta << 2.3, 1, -2, 1.5, -2.7, 0.2, -1.4, 3, -0.6, -1.2;
  } else {
    throw DomainError("scenario must be 1 or 2");
  }
  return beta;
}

void StudyConfig::validate() const {
  scenario_beta(scenario);
  if (p_grid.empty() || n_grid.empty()) throw DomainError("p and n grids must be non-empty");
  for (double p : p_grid) {
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("p grid values must be positive");
  }
  const auto k = scenario_beta(scenario).size();
  for (long n : n_grid) {
    if (n <= k) throw DomainError("n grid values must exceed the number of coefficients");
  }
  if (reps < 1) throw DomainError("reps must be at least 1");
  if (jobs < 1) throw DomainError("jobs must be at least 1");
  if (!(prior_beta_var > 0.0)) throw DomainError("prior beta variance must be positive");
  if (!(p_prior.shape > 0.0) || !(p_prior.rate > 0.0)) {
    throw DomainError("p prior shape and rate must be positive");
  }
  SamplerConfig sc;
  sc.n_iter = n_iter;
  sc.burn_in = burn_in;
  sc.validate();
}

bool ReplicateResult::geweke_pass() const {
  for (Eigen::Index j = 0; j < geweke_z.size(); ++j) {
    const double z = geweke_z[j];
    if (!std::isnan(z) && !(std::fabs(z) < kGewekeCritical)) return false;
  }
  return ok;
}

std::uint64_t study_job_index(const StudyConfig& config, std::size_t p_index,
                              std::size_t n_index, int rep) {
  return (static_cast<std::uint64_t>(p_index) * config.n_grid.size() + n_index) *
             static_cast<std::uint64_t>(config.reps) +
         static_cast<std::uint64_t>(rep);
}

namespace {

ReplicateResult run_replicate(const StudyConfig& config, const Eigen::VectorXd& beta,
                              double p_true, long n, std::uint64_t job) {
  ReplicateResult out;
  try {
    RngStream sim_rng(config.seed, 2 * job);
    const Dataset data = simulate_dataset(beta, p_true, n, sim_rng);
    const PPrior pp = config.p_known ? PPrior{FixedP{p_true}} : PPrior{config.p_prior};
    const Priors priors = Priors::isotropic(beta.size(), config.prior_beta_var, pp);
    SamplerConfig sc;
    sc.n_iter = config.n_iter;
    sc.burn_in = config.burn_in;
    sc.seed = config.seed;
    sc.stream_id = 2 * job + 1;
    const Chain chain = run_chain(data, priors, sc);
    const PosteriorSummary summary = summarize(chain);
    const auto cols = static_cast<Eigen::Index>(summary.params.size());
    out.posterior_mean.resize(cols);
    out.geweke_z.resize(cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      out.posterior_mean[j] = summary.params[static_cast<std::size_t>(j)].mean;
      out.geweke_z[j] = summary.params[static_cast<std::size_t>(j)].geweke_z;
    }
    out.slice_fallbacks = chain.meta.slice_fallbacks;
    out.wall_seconds = chain.meta.wall_seconds;
    out.ok = true;
  } catch (const std::exception& e) {
    out.ok = false;
    out.error = e.what();
  }
  return out;
}

std::string cell_tag(double p, long n) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "p%g_n%ld", p, n);
  return buf;
}

}  // namespace

StudyResult run_study(const StudyConfig& config) {
  config.validate();
  const Eigen::VectorXd beta = scenario_beta(config.scenario);
  const auto k = beta.size();

  StudyResult result;
  result.config = config;
  for (Eigen::Index j = 0; j < k; ++j) result.param_names.push_back("beta_" + std::to_string(j));
  result.param_names.push_back("p");

  struct Job {
    std::size_t cell;
    int rep;
    std::uint64_t index;
  };
  std::vector<Job> jobs;
  for (std::size_t pi = 0; pi < config.p_grid.size(); ++pi) {
    for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
      CellResult cell;
      cell.p_true = config.p_grid[pi];
      cell.n = config.n_grid[ni];
      cell.replicates.resize(static_cast<std::size_t>(config.reps));
      const std::size_t c = result.cells.size();
      result.cells.push_back(std::move(cell));
      for (int r = 0; r < config.reps; ++r) jobs.push_back({c, r, study_job_index(config, pi, ni, r)});
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      CellResult& cell = result.cells[job.cell];
      cell.replicates[static_cast<std::size_t>(job.rep)] =
          run_replicate(config, beta, cell.p_true, cell.n, job.index);
    }
  };
  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(config.jobs), jobs.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (auto& cell : result.cells) {
    const Eigen::Index cols = k + 1;
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(cols);
    Eigen::VectorXd sq = Eigen::VectorXd::Zero(cols);
    for (std::size_t r = 0; r < cell.replicates.size(); ++r) {
      const auto& rep = cell.replicates[r];
      if (!rep.ok) {
        std::ostringstream os;
        os << cell_tag(cell.p_true, cell.n) << " replicate " << r << ": " << rep.error;
        result.failures.push_back(os.str());
        continue;
      }
      ++cell.successes;
      if (rep.geweke_pass()) ++cell.geweke_passes;
      sum += rep.posterior_mean;
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (cell.successes == 0) {
      cell.mean = Eigen::VectorXd::Constant(cols, nan);
      cell.sd = Eigen::VectorXd::Constant(cols, nan);
      continue;
    }
    cell.mean = sum / cell.successes;
    for (const auto& rep : cell.replicates) {
      if (rep.ok) sq += (rep.posterior_mean - cell.mean).cwiseAbs2();
    }
    cell.sd = cell.successes > 1 ? Eigen::VectorXd((sq / (cell.successes - 1)).cwiseSqrt())
                                 : Eigen::VectorXd::Constant(cols, nan);
  }
  return result;
}

std::vector<fs::path> write_study(const StudyResult& result, const fs::path& dir) {
  std::vector<fs::path> written;
  const auto& names = result.param_names;

  for (const auto& cell : result.cells) {
    const fs::path path = dir / "cells" / (cell_tag(cell.p_true, cell.n) + ".csv");
    std::ostringstream os;
    os << "rep,ok";
    for (const auto& nm : names) os << ",mean_" << nm;
    for (const auto& nm : names) os << ",geweke_" << nm;
    os << ",geweke_pass\n";
    for (std::size_t r = 0; r < cell.replicates.size(); ++r) {
      const auto& rep = cell.replicates[r];
      os << r << ',' << (rep.ok ? "true" : "false");
      for (std::size_t j = 0; j < names.size(); ++j) {
        os << ',' << (rep.ok ? format_double(rep.posterior_mean[static_cast<Eigen::Index>(j)]) : "nan");
      }
      for (std::size_t j = 0; j < names.size(); ++j) {
        os << ',' << (rep.ok ? format_double(rep.geweke_z[static_cast<Eigen::Index>(j)]) : "nan");
      }
      os << ',' << (rep.geweke_pass() ? "true" : "false") << '\n';
    }
    write_text_file(path, os.str());
    written.push_back(path);
  }

  {
    std::ostringstream os;
    os << "p_true,n,statistic,reps";
    for (const auto& nm : names) os << ',' << nm;
    os << '\n';
    for (const auto& cell : result.cells) {
      for (const auto& [label, vec] : {std::pair{"mean", &cell.mean}, std::pair{"sd", &cell.sd}}) {
        os << format_double(cell.p_true) << ',' << cell.n << ',' << label << ','
           << cell.successes;
        for (Eigen::Index j = 0; j < vec->size(); ++j) os << ',' << format_double((*vec)[j]);
        os << '\n';
      }
    }
    const fs::path path = dir / "table.csv";
    write_text_file(path, os.str());
    written.push_back(path);
  }
  {
    std::ostringstream os;
    os << "p_true,n,reps,all_pass\n";
    for (const auto& cell : result.cells) {
      os << format_double(cell.p_true) << ',' << cell.n << ',' << cell.successes << ','
         << cell.geweke_passes << '\n';
    }
    const fs::path path = dir / "geweke.csv";
    write_text_file(path, os.str());
    written.push_back(path);
  }
  return written;
}

}  // namespace glogit
