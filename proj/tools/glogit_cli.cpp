// Command-line front end. Talks to the library only through glogit.h.
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "glogit/glogit.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

constexpr const char* kOutDirEnv = "GLOGIT_OUT_DIR";

std::string default_out_dir() {
  const char* env = std::getenv(kOutDirEnv);
  return env && *env ? env : "glogit-out";
}

int exit_code(glogit_status status) {
  switch (status) {
    case GLOGIT_OK: return kExitOk;
    case GLOGIT_ERR_INVALID_ARGUMENT:
    case GLOGIT_ERR_DATA: return kExitUsage;
    default: return kExitIo;
  }
}

struct Failure {
  int code;
};

// Throws Failure after reporting when `status` is not OK.
void check(glogit_status status, const std::string& context) {
  if (status == GLOGIT_OK) return;
  std::cerr << "error: " << context << ": " << glogit_last_error() << '\n';
  if (exit_code(status) == kExitUsage) std::cerr << "Run with --help for more information.\n";
  throw Failure{exit_code(status)};
}

// Shortest text that reads back to the same double.
std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::ostringstream os;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    if constexpr (std::is_floating_point_v<T>) {
      os << fmt(values[i]);
    } else {
      os << values[i];
    }
  }
  return os.str();
}

// Owning wrappers for the C handles.
template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

using Dataset = Handle<glogit_dataset, glogit_dataset_free>;
using Chain = Handle<glogit_chain, glogit_chain_free>;
using Summary = Handle<glogit_summary, glogit_summary_free>;
using Study = Handle<glogit_study_result, glogit_study_result_free>;
using Manifest = Handle<glogit_manifest, glogit_manifest_free>;

struct ManifestWriter {
  Manifest m;

  explicit ManifestWriter(const char* command) {
    check(glogit_manifest_create(command, m.out()), "manifest");
  }
  void flag(const std::string& key, const std::string& value) {
    check(glogit_manifest_set_flag(m.get(), key.c_str(), value.c_str()), "manifest");
  }
  void output(const fs::path& path) {
    check(glogit_manifest_add_output(m.get(), path.string().c_str()), "manifest");
  }
  void write(const fs::path& dir) {
    const fs::path path = dir / "manifest.json";
    check(glogit_manifest_write(m.get(), path.string().c_str()), "writing manifest");
  }
};

struct SimulateArgs {
  long n = 0;
  std::vector<double> beta;
  double p = 1.0;
  std::uint64_t seed = 1;
  int reps = 1;
  std::string out_dir;
};

int cmd_simulate(const SimulateArgs& a) {
  const fs::path dir = a.out_dir;
  ManifestWriter manifest("simulate");
  manifest.flag("n", std::to_string(a.n));
  manifest.flag("beta", join(a.beta));
  manifest.flag("p", fmt(a.p));
  manifest.flag("seed", std::to_string(a.seed));
  manifest.flag("reps", std::to_string(a.reps));
  manifest.flag("out-dir", a.out_dir);
  glogit_manifest_set_seed(manifest.m.get(), a.seed);

  for (int r = 1; r <= a.reps; ++r) {
    Dataset data;
    check(glogit_dataset_simulate(a.beta.data(), a.beta.size(), a.p,
                                  static_cast<std::size_t>(a.n), a.seed,
                                  static_cast<std::uint64_t>(r - 1), data.out()),
          "simulate");
    const fs::path path = dir / ("rep_" + std::to_string(r) + ".csv");
    check(glogit_dataset_write_csv(data.get(), path.string().c_str()), "writing dataset");
    manifest.output(path);
  }
  manifest.write(dir);
  std::cout << "wrote " << a.reps << " dataset(s) to " << dir.string() << '\n';
  return kExitOk;
}

struct FitArgs {
  std::string data;
  std::string response = "y";
  long iters = 20000;
  long burnin = 5000;
  long thin = 1;
  std::uint64_t seed = 1;
  double prior_beta_var = 5.0;
  double prior_p_shape = 1.0;
  double prior_p_rate = 1.0;
  std::optional<double> fixed_p;
  std::string init = "zero";
  bool no_intercept = false;
  std::string out_dir;
};

int cmd_fit(const FitArgs& a) {
  const fs::path dir = a.out_dir;
  ManifestWriter manifest("fit");
  manifest.flag("data", a.data);
  manifest.flag("response", a.response);
  manifest.flag("iters", std::to_string(a.iters));
  manifest.flag("burnin", std::to_string(a.burnin));
  manifest.flag("thin", std::to_string(a.thin));
  manifest.flag("seed", std::to_string(a.seed));
  manifest.flag("prior-beta-var", fmt(a.prior_beta_var));
  manifest.flag("prior-p-shape", fmt(a.prior_p_shape));
  manifest.flag("prior-p-rate", fmt(a.prior_p_rate));
  manifest.flag("fixed-p", a.fixed_p ? fmt(*a.fixed_p) : "");
  manifest.flag("init", a.init);
  manifest.flag("no-intercept", a.no_intercept ? "true" : "false");
  manifest.flag("out-dir", a.out_dir);
  glogit_manifest_set_seed(manifest.m.get(), a.seed);

  Dataset data;
  check(glogit_dataset_read_csv(a.data.c_str(), a.response.c_str(), data.out()),
        "reading " + a.data);
  check(glogit_manifest_set_input(manifest.m.get(), a.data.c_str()), "manifest");
  if (!a.no_intercept && !glogit_dataset_has_constant_column(data.get())) {
    check(glogit_dataset_add_intercept(data.get()), "adding intercept");
  }

  glogit_fit_options options;
  glogit_fit_options_default(&options);
  options.n_iter = a.iters;
  options.burn_in = a.burnin;
  options.thin = a.thin;
  options.seed = a.seed;
  options.prior_beta_var = a.prior_beta_var;
  options.prior_p_shape = a.prior_p_shape;
  options.prior_p_rate = a.prior_p_rate;
  options.p_fixed = a.fixed_p.has_value();
  options.fixed_p = a.fixed_p.value_or(1.0);
  options.init = a.init == "mle" ? GLOGIT_INIT_MLE : GLOGIT_INIT_ZERO;

  Chain chain;
  check(glogit_fit(data.get(), &options, chain.out()), "fit");
  for (std::size_t i = 0; i < glogit_chain_warning_count(chain.get()); ++i) {
    std::cerr << "warning: " << glogit_chain_warning(chain.get(), i) << '\n';
  }

  Summary summary;
  check(glogit_summarize(chain.get(), data.get(), summary.out()), "summarize");
  const fs::path chain_path = dir / "chain.csv";
  const fs::path csv_path = dir / "summary.csv";
  const fs::path txt_path = dir / "summary.txt";
  check(glogit_chain_write_csv(chain.get(), chain_path.string().c_str()), "writing chain");
  check(glogit_summary_write_csv(summary.get(), csv_path.string().c_str()), "writing summary");
  check(glogit_summary_write_txt(summary.get(), txt_path.string().c_str()), "writing summary");
  for (const auto& p : {chain_path, csv_path, txt_path}) manifest.output(p);
  manifest.write(dir);

  std::ifstream table(txt_path);
  std::cout << table.rdbuf();
  return kExitOk;
}

struct DiagnoseArgs {
  std::string chain;
  long max_lag = 50;
  std::string out_dir;
};

int cmd_diagnose(const DiagnoseArgs& a) {
  const fs::path dir = a.out_dir;
  ManifestWriter manifest("diagnose");
  manifest.flag("chain", a.chain);
  manifest.flag("max-lag", std::to_string(a.max_lag));
  manifest.flag("out-dir", a.out_dir);

  Chain chain;
  check(glogit_chain_read_csv(a.chain.c_str(), chain.out()), "reading " + a.chain);
  check(glogit_manifest_set_input(manifest.m.get(), a.chain.c_str()), "manifest");
  check(glogit_diagnose_write(chain.get(), a.max_lag, dir.string().c_str()), "diagnose");
  for (const char* name : {"geweke.csv", "acf.csv", "pacf.csv"}) manifest.output(dir / name);
  manifest.write(dir);

  std::ifstream geweke(dir / "geweke.csv");
  std::cout << geweke.rdbuf();
  return kExitOk;
}

struct StudyArgs {
  int scenario = 1;
  std::vector<double> p_grid{0.3, 0.7, 1.5, 3.0};
  std::vector<long> n_grid{100, 250};
  int reps = 20;
  std::string p_mode = "known";
  std::uint64_t seed = 1;
  std::optional<long> iters;
  std::optional<long> burnin;
  int jobs = 1;
  double prior_beta_var = 5.0;
  std::string out_dir;
};

int cmd_study(const StudyArgs& a) {
  const fs::path dir = a.out_dir;
  const bool known = a.p_mode == "known";
  const long iters = a.iters.value_or(known ? 20000 : 6000);
  const long burnin = a.burnin.value_or(known ? 5000 : 1000);

  ManifestWriter manifest("study");
  manifest.flag("scenario", std::to_string(a.scenario));
  manifest.flag("p-grid", join(a.p_grid));
  manifest.flag("n-grid", join(a.n_grid));
  manifest.flag("reps", std::to_string(a.reps));
  manifest.flag("p-mode", a.p_mode);
  manifest.flag("seed", std::to_string(a.seed));
  manifest.flag("iters", std::to_string(iters));
  manifest.flag("burnin", std::to_string(burnin));
  manifest.flag("jobs", std::to_string(a.jobs));
  manifest.flag("prior-beta-var", fmt(a.prior_beta_var));
  manifest.flag("out-dir", a.out_dir);
  glogit_manifest_set_seed(manifest.m.get(), a.seed);

  glogit_study_options options;
  glogit_study_options_default(&options);
  options.scenario = a.scenario;
  options.p_grid = a.p_grid.data();
  options.p_grid_len = a.p_grid.size();
  options.n_grid = a.n_grid.data();
  options.n_grid_len = a.n_grid.size();
  options.reps = a.reps;
  options.p_known = known;
  options.seed = a.seed;
  options.n_iter = iters;
  options.burn_in = burnin;
  options.jobs = a.jobs;
  options.prior_beta_var = a.prior_beta_var;

  Study study;
  check(glogit_study_run(&options, study.out()), "study");
  check(glogit_study_write(study.get(), dir.string().c_str()), "writing study");
  for (std::size_t i = 0; i < glogit_study_failure_count(study.get()); ++i) {
    const char* msg = glogit_study_failure(study.get(), i);
    std::cerr << "warning: " << msg << '\n';
    check(glogit_manifest_add_failure(manifest.m.get(), msg), "manifest");
  }
  manifest.output(dir / "table.csv");
  manifest.output(dir / "geweke.csv");
  manifest.output(dir / "cells");
  manifest.write(dir);

  std::ifstream table(dir / "table.csv");
  std::cout << table.rdbuf();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian generalized logistic regression via Polya-Gamma Gibbs sampling"};
  app.set_version_flag("--version", std::string(glogit_version()));
  app.require_subcommand(1);
  app.footer(std::string("Environment:\n  ") + kOutDirEnv +
             "  default for --out-dir (otherwise ./glogit-out)\n\n"
             "Exit status: 0 success, 1 I/O or runtime failure, 2 usage or data error.");

  const std::string out_default = default_out_dir();

  SimulateArgs sim;
  sim.out_dir = out_default;
  auto* s = app.add_subcommand("simulate", "Simulate datasets with an intercept column x0");
  s->add_option("--n", sim.n, "Observations per dataset")->required()->check(CLI::PositiveNumber);
  s->add_option("--beta", sim.beta, "Coefficients, comma separated; the first is the intercept")
      ->required()
      ->delimiter(',');
  s->add_option("--p", sim.p, "Shape of the generalized logistic link")
      ->required()
      ->check(CLI::PositiveNumber);
  s->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
  s->add_option("--reps", sim.reps, "Number of datasets")
      ->capture_default_str()
      ->check(CLI::Range(1, 1000000));
  s->add_option("--out-dir", sim.out_dir, "Output directory")->capture_default_str();

  FitArgs fit;
  fit.out_dir = out_default;
  auto* f = app.add_subcommand("fit", "Run the Gibbs sampler on a CSV dataset");
  f->add_option("--data", fit.data, "CSV file with a header row")->required();
  f->add_option("--response", fit.response, "Response column (0/1)")->capture_default_str();
  f->add_option("--iters", fit.iters, "Total sweeps")->capture_default_str();
  f->add_option("--burnin", fit.burnin, "Discarded initial sweeps")->capture_default_str();
  f->add_option("--thin", fit.thin, "Keep every thin-th sweep")->capture_default_str();
  f->add_option("--seed", fit.seed, "Random seed")->capture_default_str();
  f->add_option("--prior-beta-var", fit.prior_beta_var, "Prior variance v in beta ~ N(0, v I)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  auto* shape = f->add_option("--prior-p-shape", fit.prior_p_shape, "Gamma prior shape for p")
                    ->capture_default_str()
                    ->check(CLI::PositiveNumber);
  auto* rate = f->add_option("--prior-p-rate", fit.prior_p_rate, "Gamma prior rate for p")
                   ->capture_default_str()
                   ->check(CLI::PositiveNumber);
  f->add_option("--fixed-p", fit.fixed_p, "Hold p at this value")
      ->check(CLI::PositiveNumber)
      ->excludes(shape)
      ->excludes(rate);
  f->add_option("--init", fit.init, "Starting values")
      ->capture_default_str()
      ->check(CLI::IsMember({"zero", "mle"}));
  f->add_flag("--no-intercept", fit.no_intercept,
              "Do not prepend a column of ones (one is added unless a column is all ones)");
  f->add_option("--out-dir", fit.out_dir, "Output directory")->capture_default_str();

  DiagnoseArgs diag;
  diag.out_dir = out_default;
  auto* d = app.add_subcommand("diagnose", "Geweke, ACF and PACF for a chain.csv");
  d->add_option("--chain", diag.chain, "chain.csv written by fit")->required();
  d->add_option("--max-lag", diag.max_lag, "Largest lag")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  d->add_option("--out-dir", diag.out_dir, "Output directory")->capture_default_str();

  StudyArgs study;
  study.out_dir = out_default;
  auto* st = app.add_subcommand("study", "Simulate-and-fit grid with replicate tables");
  st->add_option("--scenario", study.scenario, "1: k = 5, 2: k = 10")
      ->capture_default_str()
      ->check(CLI::IsMember({1, 2}));
  st->add_option("--p-grid", study.p_grid, "True p values")
      ->capture_default_str()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  st->add_option("--n-grid", study.n_grid, "Sample sizes")
      ->capture_default_str()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  st->add_option("--reps", study.reps, "Replicates per cell")
      ->capture_default_str()
      ->check(CLI::Range(1, 1000000));
  st->add_option("--p-mode", study.p_mode, "known: fix p at the truth; unknown: sample it")
      ->capture_default_str()
      ->check(CLI::IsMember({"known", "unknown"}));
  st->add_option("--seed", study.seed, "Random seed")->capture_default_str();
  st->add_option("--iters", study.iters, "Sweeps per chain (default 20000 known, 6000 unknown)");
  st->add_option("--burnin", study.burnin, "Burn-in (default 5000 known, 1000 unknown)");
  st->add_option("--jobs", study.jobs, "Parallel chains")
      ->capture_default_str()
      ->check(CLI::Range(1, 1024));
  st->add_option("--prior-beta-var", study.prior_beta_var, "Prior variance v in beta ~ N(0, v I)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  st->add_option("--out-dir", study.out_dir, "Output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (s->parsed()) return cmd_simulate(sim);
    if (f->parsed()) return cmd_fit(fit);
    if (d->parsed()) return cmd_diagnose(diag);
    if (st->parsed()) return cmd_study(study);
  } catch (const Failure& failure) {
    return failure.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}
