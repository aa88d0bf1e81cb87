/* C interface to the generalized logistic regression sampler. */
#ifndef GLOGIT_GLOGIT_H
#define GLOGIT_GLOGIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(GLOGIT_BUILDING_LIBRARY)
#define GLOGIT_API __attribute__((visibility("default")))
#else
#define GLOGIT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum glogit_status {
  GLOGIT_OK = 0,
  GLOGIT_ERR_INVALID_ARGUMENT = 1, /* bad parameter value or flag combination */
  GLOGIT_ERR_IO = 2,               /* file could not be opened, read or written */
  GLOGIT_ERR_PARSE = 3,            /* malformed CSV or JSON */
  GLOGIT_ERR_DATA = 4,             /* data violates a model precondition */
  GLOGIT_ERR_NUMERIC = 5,
  GLOGIT_ERR_INTERNAL = 6
} glogit_status;

typedef struct glogit_dataset glogit_dataset;
typedef struct glogit_chain glogit_chain;
typedef struct glogit_summary glogit_summary;
typedef struct glogit_study_result glogit_study_result;
typedef struct glogit_manifest glogit_manifest;

GLOGIT_API const char* glogit_version(void);
GLOGIT_API const char* glogit_status_name(glogit_status status);
/* Message of the last failed call on this thread; "" if none. */
GLOGIT_API const char* glogit_last_error(void);

/* ---- datasets ---- */

GLOGIT_API glogit_status glogit_dataset_read_csv(const char* path, const char* response,
                                                 glogit_dataset** out);
/* Intercept column of ones plus k - 1 standard normal covariates. */
GLOGIT_API glogit_status glogit_dataset_simulate(const double* beta, size_t k, double p,
                                                 size_t n, uint64_t seed, uint64_t stream,
                                                 glogit_dataset** out);
GLOGIT_API glogit_status glogit_dataset_write_csv(const glogit_dataset* data,
                                                  const char* path);
GLOGIT_API size_t glogit_dataset_rows(const glogit_dataset* data);
GLOGIT_API size_t glogit_dataset_cols(const glogit_dataset* data);
GLOGIT_API const char* glogit_dataset_column_name(const glogit_dataset* data, size_t col);
GLOGIT_API glogit_status glogit_dataset_get_x(const glogit_dataset* data, size_t row,
                                              size_t col, double* out);
GLOGIT_API glogit_status glogit_dataset_get_y(const glogit_dataset* data, size_t row,
                                              int* out);
/* 1 if some column is identically one, else 0. */
GLOGIT_API int glogit_dataset_has_constant_column(const glogit_dataset* data);
GLOGIT_API glogit_status glogit_dataset_add_intercept(glogit_dataset* data);
GLOGIT_API void glogit_dataset_free(glogit_dataset* data);

/* ---- fitting ---- */

typedef enum glogit_init { GLOGIT_INIT_ZERO = 0, GLOGIT_INIT_MLE = 1 } glogit_init;

typedef struct glogit_fit_options {
  long n_iter;
  long burn_in;
  long thin;
  uint64_t seed;
  uint64_t stream_id;
  double prior_beta_var; /* B = prior_beta_var * I, prior mean 0 */
  double prior_p_shape;
  double prior_p_rate;
  int p_fixed; /* nonzero: hold p at fixed_p */
  double fixed_p;
  glogit_init init;
} glogit_fit_options;

/* 20000 iterations, 5000 burn-in, thin 1, seed 1, B = 5 I, Gamma(1, 1) on p. */
GLOGIT_API void glogit_fit_options_default(glogit_fit_options* options);

GLOGIT_API glogit_status glogit_fit(const glogit_dataset* data,
                                    const glogit_fit_options* options,
                                    glogit_chain** out);

GLOGIT_API glogit_status glogit_chain_read_csv(const char* path, glogit_chain** out);
GLOGIT_API glogit_status glogit_chain_write_csv(const glogit_chain* chain, const char* path);
GLOGIT_API size_t glogit_chain_draws(const glogit_chain* chain);
/* Number of stored columns: k coefficients plus p. */
GLOGIT_API size_t glogit_chain_params(const glogit_chain* chain);
GLOGIT_API const char* glogit_chain_param_name(const glogit_chain* chain, size_t col);
GLOGIT_API glogit_status glogit_chain_get(const glogit_chain* chain, size_t row, size_t col,
                                          double* out);
GLOGIT_API glogit_status glogit_chain_iter(const glogit_chain* chain, size_t row, long* out);
GLOGIT_API long glogit_chain_slice_fallbacks(const glogit_chain* chain);
GLOGIT_API size_t glogit_chain_warning_count(const glogit_chain* chain);
GLOGIT_API const char* glogit_chain_warning(const glogit_chain* chain, size_t i);
GLOGIT_API void glogit_chain_free(glogit_chain* chain);

/* ---- summaries and diagnostics ---- */

typedef struct glogit_param_summary {
  const char* name;  /* owned by the summary */
  const char* label;
  double mean;
  double sd;
  double q025;
  double q500;
  double q975;
  double geweke_z; /* NaN when undefined */
  double ess;
} glogit_param_summary;

/* `labels` may be NULL; otherwise its column names label the coefficients. */
GLOGIT_API glogit_status glogit_summarize(const glogit_chain* chain,
                                          const glogit_dataset* labels,
                                          glogit_summary** out);
GLOGIT_API size_t glogit_summary_params(const glogit_summary* summary);
GLOGIT_API glogit_status glogit_summary_get(const glogit_summary* summary, size_t i,
                                            glogit_param_summary* out);
GLOGIT_API glogit_status glogit_summary_write_csv(const glogit_summary* summary,
                                                  const char* path);
GLOGIT_API glogit_status glogit_summary_write_txt(const glogit_summary* summary,
                                                  const char* path);
GLOGIT_API void glogit_summary_free(glogit_summary* summary);

/* geweke.csv, acf.csv and pacf.csv in `dir`. */
GLOGIT_API glogit_status glogit_diagnose_write(const glogit_chain* chain, long max_lag,
                                               const char* dir);

/* ---- simulation study ---- */

typedef struct glogit_study_options {
  int scenario; /* 1 or 2 */
  const double* p_grid;
  size_t p_grid_len;
  const long* n_grid;
  size_t n_grid_len;
  int reps;
  int p_known;
  uint64_t seed;
  long n_iter;
  long burn_in;
  int jobs;
  double prior_beta_var;
  double prior_p_shape;
  double prior_p_rate;
} glogit_study_options;

/* Scenario 1, p grid {0.3, 0.7, 1.5, 3}, n grid {100, 250}, 20 reps, p known,
   20000/5000 sweeps, one job. The grids point at static storage. */
GLOGIT_API void glogit_study_options_default(glogit_study_options* options);

GLOGIT_API glogit_status glogit_study_run(const glogit_study_options* options,
                                          glogit_study_result** out);
GLOGIT_API glogit_status glogit_study_write(const glogit_study_result* result,
                                            const char* dir);
GLOGIT_API size_t glogit_study_cells(const glogit_study_result* result);
GLOGIT_API glogit_status glogit_study_cell_info(const glogit_study_result* result,
                                                size_t cell, double* p_true, long* n,
                                                int* successes, int* geweke_passes);
/* Across-replicate mean and sd of posterior means for column `col`. */
GLOGIT_API glogit_status glogit_study_cell_stat(const glogit_study_result* result,
                                                size_t cell, size_t col, double* mean,
                                                double* sd);
GLOGIT_API size_t glogit_study_failure_count(const glogit_study_result* result);
GLOGIT_API const char* glogit_study_failure(const glogit_study_result* result, size_t i);
GLOGIT_API void glogit_study_result_free(glogit_study_result* result);

/* ---- run manifests ---- */

GLOGIT_API glogit_status glogit_manifest_create(const char* command, glogit_manifest** out);
GLOGIT_API glogit_status glogit_manifest_set_flag(glogit_manifest* manifest, const char* key,
                                                  const char* value);
GLOGIT_API void glogit_manifest_set_seed(glogit_manifest* manifest, uint64_t seed);
/* Records the path and FNV-1a digest of an input file. */
GLOGIT_API glogit_status glogit_manifest_set_input(glogit_manifest* manifest,
                                                   const char* path);
GLOGIT_API glogit_status glogit_manifest_add_output(glogit_manifest* manifest,
                                                    const char* path);
GLOGIT_API glogit_status glogit_manifest_add_failure(glogit_manifest* manifest,
                                                     const char* message);
/* Stamps the finish time and writes JSON to `path`. */
GLOGIT_API glogit_status glogit_manifest_write(glogit_manifest* manifest, const char* path);
GLOGIT_API void glogit_manifest_free(glogit_manifest* manifest);

#ifdef __cplusplus
}
#endif

#endif /* GLOGIT_GLOGIT_H */
