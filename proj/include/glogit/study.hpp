#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "glogit/sampler.hpp"

namespace glogit {

/// Scenario 1: k = 5; scenario 2: k = 10. Throws DomainError otherwise.
Eigen::VectorXd scenario_beta(int scenario);

struct StudyConfig {
  int scenario = 1;
  std::vector<double> p_grid{0.3, 0.7, 1.5, 3.0};
  std::vector<long> n_grid{100, 250};
  int reps = 20;
  bool p_known = true;
  std::uint64_t seed = 1;
  long n_iter = 20000;
  long burn_in = 5000;
  int jobs = 1;
  double prior_beta_var = 5.0;
  GammaPrior p_prior{};

  void validate() const;
  std::size_t job_count() const noexcept {
    return p_grid.size() * n_grid.size() * static_cast<std::size_t>(reps);
  }
};

struct ReplicateResult {
  bool ok = false;
  std::string error;
  Eigen::VectorXd posterior_mean;  // beta_0..beta_{k-1}, p
  Eigen::VectorXd geweke_z;        // NaN for a fixed p
  long slice_fallbacks = 0;
  double wall_seconds = 0.0;

  /// Every defined |z| is below kGewekeCritical.
  bool geweke_pass() const;
};

struct CellResult {
  double p_true = 0.0;
  long n = 0;
  std::vector<ReplicateResult> replicates;
  Eigen::VectorXd mean;  // across successful replicates
  Eigen::VectorXd sd;    // n - 1 denominator; NaN with fewer than two
  int successes = 0;
  int geweke_passes = 0;
};

struct StudyResult {
  StudyConfig config;
  std::vector<std::string> param_names;
  std::vector<CellResult> cells;  // p-major, then n
  std::vector<std::string> failures;
};

/// Stream ids used for replicate `rep` of cell (p_index, n_index): the
/// dataset comes from stream 2j and the chain from stream 2j + 1, where
/// j = (p_index * |n_grid| + n_index) * reps + rep. Results do not depend on
/// config.jobs.
std::uint64_t study_job_index(const StudyConfig& config, std::size_t p_index,
                              std::size_t n_index, int rep);

/// Simulates and fits every replicate of every cell on a pool of
/// config.jobs threads. A failing replicate is recorded and skipped.
StudyResult run_study(const StudyConfig& config);

/// cells/p<p>_n<n>.csv (one row per replicate), table.csv (mean and sd per
/// cell) and geweke.csv (pass counts per cell) under `dir`. Returns the paths
/// written.
std::vector<std::filesystem::path> write_study(const StudyResult& result,
                                               const std::filesystem::path& dir);

}  // namespace glogit
