#include "glogit/glogit.h"

#include <cmath>
#include <new>
#include <string>

#include "glogit/diagnostics.hpp"
#include "glogit/errors.hpp"
#include "glogit/io.hpp"
#include "glogit/manifest.hpp"
#include "glogit/model.hpp"
#include "glogit/sampler.hpp"
#include "glogit/study.hpp"

struct glogit_dataset {
  glogit::Dataset data;
};

struct glogit_chain {
  glogit::Chain chain;
};

struct glogit_summary {
  glogit::PosteriorSummary summary;
};

struct glogit_study_result {
  glogit::StudyResult result;
};

struct glogit_manifest {
  glogit::RunManifest manifest;
};

namespace {

thread_local std::string last_error;

glogit_status fail(glogit_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
glogit_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return GLOGIT_OK;
  } catch (const glogit::IoError& e) {
    return fail(GLOGIT_ERR_IO, e.what());
  } catch (const glogit::ParseError& e) {
    return fail(GLOGIT_ERR_PARSE, e.what());
  } catch (const glogit::DataError& e) {
    return fail(GLOGIT_ERR_DATA, e.what());
  } catch (const glogit::DomainError& e) {
    return fail(GLOGIT_ERR_INVALID_ARGUMENT, e.what());
  } catch (const glogit::NumericError& e) {
    return fail(GLOGIT_ERR_NUMERIC, e.what());
  } catch (const glogit::RootError& e) {
    return fail(GLOGIT_ERR_NUMERIC, e.what());
  } catch (const std::bad_alloc&) {
    return fail(GLOGIT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GLOGIT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GLOGIT_ERR_INTERNAL, "unknown error");
  }
}

#define GLOGIT_REQUIRE(cond, what) \
  do {                             \
    if (!(cond)) return fail(GLOGIT_ERR_INVALID_ARGUMENT, what); \
  } while (0)

}  // namespace

extern "C" {

const char* glogit_version(void) { return GLOGIT_VERSION; }

const char* glogit_status_name(glogit_status status) {
  switch (status) {
    case GLOGIT_OK: return "ok";
    case GLOGIT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GLOGIT_ERR_IO: return "i/o error";
    case GLOGIT_ERR_PARSE: return "parse error";
    case GLOGIT_ERR_DATA: return "data error";
    case GLOGIT_ERR_NUMERIC: return "numerical error";
    case GLOGIT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* glogit_last_error(void) { return last_error.c_str(); }

glogit_status glogit_dataset_read_csv(const char* path, const char* response,
                                      glogit_dataset** out) {
  GLOGIT_REQUIRE(path && out, "path and out must be non-null");
  *out = nullptr;
  return guarded([&] {
    auto ds = std::make_unique<glogit_dataset>();
    ds->data = glogit::read_csv(path, response ? response : "y");
    *out = ds.release();
  });
}

glogit_status glogit_dataset_simulate(const double* beta, size_t k, double p, size_t n,
                                      uint64_t seed, uint64_t stream, glogit_dataset** out) {
  GLOGIT_REQUIRE(beta && out, "beta and out must be non-null");
  GLOGIT_REQUIRE(k > 0, "beta must have at least one entry");
  GLOGIT_REQUIRE(n > 0, "n must be positive");
  *out = nullptr;
  return guarded([&] {
    const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(beta, static_cast<Eigen::Index>(k));
    glogit::RngStream rng(seed, stream);
    auto ds = std::make_unique<glogit_dataset>();
    ds->data = glogit::simulate_dataset(b, p, static_cast<Eigen::Index>(n), rng);
    *out = ds.release();
  });
}

glogit_status glogit_dataset_write_csv(const glogit_dataset* data, const char* path) {
  GLOGIT_REQUIRE(data && path, "data and path must be non-null");
  return guarded([&] { glogit::write_dataset_csv(path, data->data); });
}

size_t glogit_dataset_rows(const glogit_dataset* data) {
  return data ? static_cast<size_t>(data->data.n()) : 0;
}

size_t glogit_dataset_cols(const glogit_dataset* data) {
  return data ? static_cast<size_t>(data->data.k()) : 0;
}

const char* glogit_dataset_column_name(const glogit_dataset* data, size_t col) {
  if (!data || col >= data->data.names.size()) return nullptr;
  return data->data.names[col].c_str();
}

glogit_status glogit_dataset_get_x(const glogit_dataset* data, size_t row, size_t col,
                                   double* out) {
  GLOGIT_REQUIRE(data && out, "data and out must be non-null");
  GLOGIT_REQUIRE(row < glogit_dataset_rows(data) && col < glogit_dataset_cols(data),
                 "index out of range");
  *out = data->data.x(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  return GLOGIT_OK;
}

glogit_status glogit_dataset_get_y(const glogit_dataset* data, size_t row, int* out) {
  GLOGIT_REQUIRE(data && out, "data and out must be non-null");
  GLOGIT_REQUIRE(row < glogit_dataset_rows(data), "index out of range");
  *out = data->data.y[row];
  return GLOGIT_OK;
}

int glogit_dataset_has_constant_column(const glogit_dataset* data) {
  return data && data->data.constant_one_column().has_value() ? 1 : 0;
}

glogit_status glogit_dataset_add_intercept(glogit_dataset* data) {
  GLOGIT_REQUIRE(data, "data must be non-null");
  return guarded([&] { data->data.add_intercept(); });
}

void glogit_dataset_free(glogit_dataset* data) { delete data; }

void glogit_fit_options_default(glogit_fit_options* options) {
  if (!options) return;
  options->n_iter = 20000;
  options->burn_in = 5000;
  options->thin = 1;
  options->seed = 1;
  options->stream_id = 0;
  options->prior_beta_var = 5.0;
  options->prior_p_shape = 1.0;
  options->prior_p_rate = 1.0;
  options->p_fixed = 0;
  options->fixed_p = 1.0;
  options->init = GLOGIT_INIT_ZERO;
}

glogit_status glogit_fit(const glogit_dataset* data, const glogit_fit_options* options,
                         glogit_chain** out) {
  GLOGIT_REQUIRE(data && options && out, "data, options and out must be non-null");
  *out = nullptr;
  GLOGIT_REQUIRE(options->init == GLOGIT_INIT_ZERO || options->init == GLOGIT_INIT_MLE,
                 "init must be zero or mle");
  return guarded([&] {
    glogit::PPrior pp = glogit::GammaPrior{options->prior_p_shape, options->prior_p_rate};
    if (options->p_fixed) {
      if (!(options->fixed_p > 0.0) || !std::isfinite(options->fixed_p)) {
        throw glogit::DomainError("fixed p must be positive and finite");
      }
      pp = glogit::FixedP{options->fixed_p};
    } else if (!(options->prior_p_shape > 0.0) || !(options->prior_p_rate > 0.0)) {
      throw glogit::DomainError("p prior shape and rate must be positive");
    }
    if (!(options->prior_beta_var > 0.0) || !std::isfinite(options->prior_beta_var)) {
      throw glogit::DomainError("prior beta variance must be positive");
    }
    const auto priors = glogit::Priors::isotropic(data->data.k(), options->prior_beta_var, pp);
    glogit::SamplerConfig config;
    config.n_iter = options->n_iter;
    config.burn_in = options->burn_in;
    config.thin = options->thin;
    config.seed = options->seed;
    config.stream_id = options->stream_id;
    config.init = options->init == GLOGIT_INIT_MLE ? glogit::InitMode::mle
                                                   : glogit::InitMode::zero;
    auto ch = std::make_unique<glogit_chain>();
    ch->chain = glogit::run_chain(data->data, priors, config);
    *out = ch.release();
  });
}

glogit_status glogit_chain_read_csv(const char* path, glogit_chain** out) {
  GLOGIT_REQUIRE(path && out, "path and out must be non-null");
  *out = nullptr;
  return guarded([&] {
    auto ch = std::make_unique<glogit_chain>();
    ch->chain = glogit::read_chain_csv(path);
    *out = ch.release();
  });
}

glogit_status glogit_chain_write_csv(const glogit_chain* chain, const char* path) {
  GLOGIT_REQUIRE(chain && path, "chain and path must be non-null");
  return guarded([&] { glogit::write_chain_csv(path, chain->chain); });
}

size_t glogit_chain_draws(const glogit_chain* chain) {
  return chain ? static_cast<size_t>(chain->chain.size()) : 0;
}

size_t glogit_chain_params(const glogit_chain* chain) {
  return chain ? static_cast<size_t>(chain->chain.draws.cols()) : 0;
}

const char* glogit_chain_param_name(const glogit_chain* chain, size_t col) {
  if (!chain || col >= chain->chain.param_names.size()) return nullptr;
  return chain->chain.param_names[col].c_str();
}

glogit_status glogit_chain_get(const glogit_chain* chain, size_t row, size_t col,
                               double* out) {
  GLOGIT_REQUIRE(chain && out, "chain and out must be non-null");
  GLOGIT_REQUIRE(row < glogit_chain_draws(chain) && col < glogit_chain_params(chain),
                 "index out of range");
  *out = chain->chain.draws(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  return GLOGIT_OK;
}

glogit_status glogit_chain_iter(const glogit_chain* chain, size_t row, long* out) {
  GLOGIT_REQUIRE(chain && out, "chain and out must be non-null");
  GLOGIT_REQUIRE(row < glogit_chain_draws(chain), "index out of range");
  *out = chain->chain.iters[row];
  return GLOGIT_OK;
}

long glogit_chain_slice_fallbacks(const glogit_chain* chain) {
  return chain ? chain->chain.meta.slice_fallbacks : 0;
}

size_t glogit_chain_warning_count(const glogit_chain* chain) {
  return chain ? chain->chain.meta.warnings.size() : 0;
}

const char* glogit_chain_warning(const glogit_chain* chain, size_t i) {
  if (!chain || i >= chain->chain.meta.warnings.size()) return nullptr;
  return chain->chain.meta.warnings[i].c_str();
}

void glogit_chain_free(glogit_chain* chain) { delete chain; }

glogit_status glogit_summarize(const glogit_chain* chain, const glogit_dataset* labels,
                               glogit_summary** out) {
  GLOGIT_REQUIRE(chain && out, "chain and out must be non-null");
  *out = nullptr;
  return guarded([&] {
    auto s = std::make_unique<glogit_summary>();
    s->summary = glogit::summarize(chain->chain,
                                   labels ? labels->data.names : std::vector<std::string>{});
    *out = s.release();
  });
}

size_t glogit_summary_params(const glogit_summary* summary) {
  return summary ? summary->summary.params.size() : 0;
}

glogit_status glogit_summary_get(const glogit_summary* summary, size_t i,
                                 glogit_param_summary* out) {
  GLOGIT_REQUIRE(summary && out, "summary and out must be non-null");
  GLOGIT_REQUIRE(i < summary->summary.params.size(), "index out of range");
  const auto& p = summary->summary.params[i];
  *out = {p.name.c_str(), p.label.c_str(), p.mean, p.sd, p.q025,
          p.q500, p.q975, p.geweke_z, p.ess};
  return GLOGIT_OK;
}

glogit_status glogit_summary_write_csv(const glogit_summary* summary, const char* path) {
  GLOGIT_REQUIRE(summary && path, "summary and path must be non-null");
  return guarded([&] { glogit::write_summary_csv(path, summary->summary); });
}

glogit_status glogit_summary_write_txt(const glogit_summary* summary, const char* path) {
  GLOGIT_REQUIRE(summary && path, "summary and path must be non-null");
  return guarded([&] { glogit::write_summary_txt(path, summary->summary); });
}

void glogit_summary_free(glogit_summary* summary) { delete summary; }

glogit_status glogit_diagnose_write(const glogit_chain* chain, long max_lag, const char* dir) {
  GLOGIT_REQUIRE(chain && dir, "chain and dir must be non-null");
  return guarded([&] { glogit::write_diagnostics(chain->chain, max_lag, dir); });
}

void glogit_study_options_default(glogit_study_options* options) {
  static const double p_grid[] = {0.3, 0.7, 1.5, 3.0};
  static const long n_grid[] = {100, 250};
  if (!options) return;
  options->scenario = 1;
  options->p_grid = p_grid;
  options->p_grid_len = 4;
  options->n_grid = n_grid;
  options->n_grid_len = 2;
  options->reps = 20;
  options->p_known = 1;
  options->seed = 1;
  options->n_iter = 20000;
  options->burn_in = 5000;
  options->jobs = 1;
  options->prior_beta_var = 5.0;
  options->prior_p_shape = 1.0;
  options->prior_p_rate = 1.0;
}

glogit_status glogit_study_run(const glogit_study_options* options,
                               glogit_study_result** out) {
  GLOGIT_REQUIRE(options && out, "options and out must be non-null");
  GLOGIT_REQUIRE(options->p_grid || options->p_grid_len == 0, "p_grid is null");
  GLOGIT_REQUIRE(options->n_grid || options->n_grid_len == 0, "n_grid is null");
  *out = nullptr;
  return guarded([&] {
    glogit::StudyConfig config;
    config.scenario = options->scenario;
    config.p_grid.assign(options->p_grid, options->p_grid + options->p_grid_len);
    config.n_grid.assign(options->n_grid, options->n_grid + options->n_grid_len);
    config.reps = options->reps;
    config.p_known = options->p_known != 0;
    config.seed = options->seed;
    config.n_iter = options->n_iter;
    config.burn_in = options->burn_in;
    config.jobs = options->jobs;
    config.prior_beta_var = options->prior_beta_var;
    config.p_prior = {options->prior_p_shape, options->prior_p_rate};
    auto r = std::make_unique<glogit_study_result>();
    r->result = glogit::run_study(config);
    *out = r.release();
  });
}

glogit_status glogit_study_write(const glogit_study_result* result, const char* dir) {
  GLOGIT_REQUIRE(result && dir, "result and dir must be non-null");
  return guarded([&] { glogit::write_study(result->result, dir); });
}

size_t glogit_study_cells(const glogit_study_result* result) {
  return result ? result->result.cells.size() : 0;
}

glogit_status glogit_study_cell_info(const glogit_study_result* result, size_t cell,
                                     double* p_true, long* n, int* successes,
                                     int* geweke_passes) {
  GLOGIT_REQUIRE(result, "result must be non-null");
  GLOGIT_REQUIRE(cell < result->result.cells.size(), "cell out of range");
  const auto& c = result->result.cells[cell];
  if (p_true) *p_true = c.p_true;
  if (n) *n = c.n;
  if (successes) *successes = c.successes;
  if (geweke_passes) *geweke_passes = c.geweke_passes;
  return GLOGIT_OK;
}

glogit_status glogit_study_cell_stat(const glogit_study_result* result, size_t cell,
                                     size_t col, double* mean, double* sd) {
  GLOGIT_REQUIRE(result, "result must be non-null");
  GLOGIT_REQUIRE(cell < result->result.cells.size(), "cell out of range");
  const auto& c = result->result.cells[cell];
  GLOGIT_REQUIRE(col < static_cast<size_t>(c.mean.size()), "column out of range");
  if (mean) *mean = c.mean[static_cast<Eigen::Index>(col)];
  if (sd) *sd = c.sd[static_cast<Eigen::Index>(col)];
  return GLOGIT_OK;
}

size_t glogit_study_failure_count(const glogit_study_result* result) {
  return result ? result->result.failures.size() : 0;
}

const char* glogit_study_failure(const glogit_study_result* result, size_t i) {
  if (!result || i >= result->result.failures.size()) return nullptr;
  return result->result.failures[i].c_str();
}

void glogit_study_result_free(glogit_study_result* result) { delete result; }

glogit_status glogit_manifest_create(const char* command, glogit_manifest** out) {
  GLOGIT_REQUIRE(command && out, "command and out must be non-null");
  *out = nullptr;
  return guarded([&] {
    auto m = std::make_unique<glogit_manifest>();
    m->manifest = glogit::RunManifest::begin(command);
    *out = m.release();
  });
}

glogit_status glogit_manifest_set_flag(glogit_manifest* manifest, const char* key,
                                       const char* value) {
  GLOGIT_REQUIRE(manifest && key && value, "manifest, key and value must be non-null");
  return guarded([&] { manifest->manifest.flags[key] = value; });
}

void glogit_manifest_set_seed(glogit_manifest* manifest, uint64_t seed) {
  if (manifest) manifest->manifest.seed = seed;
}

glogit_status glogit_manifest_set_input(glogit_manifest* manifest, const char* path) {
  GLOGIT_REQUIRE(manifest && path, "manifest and path must be non-null");
  return guarded([&] {
    manifest->manifest.input_digest = glogit::file_digest(path);
    manifest->manifest.input_path = path;
  });
}

glogit_status glogit_manifest_add_output(glogit_manifest* manifest, const char* path) {
  GLOGIT_REQUIRE(manifest && path, "manifest and path must be non-null");
  return guarded([&] { manifest->manifest.outputs.emplace_back(path); });
}

glogit_status glogit_manifest_add_failure(glogit_manifest* manifest, const char* message) {
  GLOGIT_REQUIRE(manifest && message, "manifest and message must be non-null");
  return guarded([&] { manifest->manifest.failures.emplace_back(message); });
}

glogit_status glogit_manifest_write(glogit_manifest* manifest, const char* path) {
  GLOGIT_REQUIRE(manifest && path, "manifest and path must be non-null");
  return guarded([&] {
    manifest->manifest.finish();
    manifest->manifest.write(path);
  });
}

void glogit_manifest_free(glogit_manifest* manifest) { delete manifest; }

}  // extern "C"
