// Exercises the shared library through the C header alone.
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "glogit/glogit.h"
#include "test_util.hpp"

namespace fs = std::filesystem;

namespace {

glogit_dataset* simulate(size_t n, uint64_t seed) {
  const double beta[] = {0.5, -1.0, 1.0};
  glogit_dataset* d = nullptr;
  REQUIRE(glogit_dataset_simulate(beta, 3, 0.8, n, seed, 0, &d) == GLOGIT_OK);
  return d;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(glogit_version()) > 0);
  CHECK(std::string(glogit_status_name(GLOGIT_ERR_IO)) == "i/o error");
  CHECK(std::string(glogit_last_error()).empty());
}

TEST_CASE("datasets through the C API") {
  testutil::TempDir dir;
  glogit_dataset* d = simulate(50, 1);
  CHECK(glogit_dataset_rows(d) == 50);
  CHECK(glogit_dataset_cols(d) == 3);
  CHECK(std::string(glogit_dataset_column_name(d, 0)) == "x0");
  CHECK(glogit_dataset_column_name(d, 3) == nullptr);
  CHECK(glogit_dataset_has_constant_column(d) == 1);
  double x = 0.0;
  CHECK(glogit_dataset_get_x(d, 0, 0, &x) == GLOGIT_OK);
  CHECK(x == 1.0);
  CHECK(glogit_dataset_get_x(d, 50, 0, &x) == GLOGIT_ERR_INVALID_ARGUMENT);
  int y = -1;
  CHECK(glogit_dataset_get_y(d, 3, &y) == GLOGIT_OK);
  CHECK((y == 0 || y == 1));

  const std::string path = (dir / "d.csv").string();
  CHECK(glogit_dataset_write_csv(d, path.c_str()) == GLOGIT_OK);
  glogit_dataset* back = nullptr;
  CHECK(glogit_dataset_read_csv(path.c_str(), "y", &back) == GLOGIT_OK);
  CHECK(glogit_dataset_rows(back) == 50);
  CHECK(glogit_dataset_add_intercept(back) == GLOGIT_OK);
  CHECK(glogit_dataset_cols(back) == 4);
  glogit_dataset_free(back);
  glogit_dataset_free(d);
  glogit_dataset_free(nullptr);
}

TEST_CASE("errors map to status codes") {
  testutil::TempDir dir;
  glogit_dataset* d = nullptr;
  CHECK(glogit_dataset_read_csv((dir / "missing.csv").string().c_str(), nullptr, &d) ==
        GLOGIT_ERR_IO);
  CHECK(d == nullptr);
  CHECK(std::string(glogit_last_error()).find("missing.csv") != std::string::npos);

  {
    std::ofstream out(dir / "na.csv");
    out << "y,x\n1,NA\n";
  }
  CHECK(glogit_dataset_read_csv((dir / "na.csv").string().c_str(), "y", &d) ==
        GLOGIT_ERR_PARSE);
  {
    std::ofstream out(dir / "bin.csv");
    out << "y,x\n3,1\n";
  }
  CHECK(glogit_dataset_read_csv((dir / "bin.csv").string().c_str(), "y", &d) ==
        GLOGIT_ERR_DATA);
  CHECK(glogit_dataset_read_csv(nullptr, "y", &d) == GLOGIT_ERR_INVALID_ARGUMENT);

  const double beta[] = {1.0};
  CHECK(glogit_dataset_simulate(beta, 1, -1.0, 10, 1, 0, &d) == GLOGIT_ERR_INVALID_ARGUMENT);

  // One response class.
  {
    std::ofstream out(dir / "one.csv");
    out << "y,x\n1,0.5\n1,0.2\n1,-1\n";
  }
  REQUIRE(glogit_dataset_read_csv((dir / "one.csv").string().c_str(), "y", &d) == GLOGIT_OK);
  glogit_fit_options opt;
  glogit_fit_options_default(&opt);
  glogit_chain* c = nullptr;
  CHECK(glogit_fit(d, &opt, &c) == GLOGIT_ERR_DATA);
  CHECK(c == nullptr);
  glogit_dataset_free(d);
}

TEST_CASE("fit, summarise and diagnose through the C API") {
  testutil::TempDir dir;
  glogit_dataset* d = simulate(80, 2);
  glogit_fit_options opt;
  glogit_fit_options_default(&opt);
  CHECK(opt.n_iter == 20000);
  CHECK(opt.burn_in == 5000);
  CHECK(opt.prior_beta_var == 5.0);
  opt.n_iter = 400;
  opt.burn_in = 100;
  opt.thin = 3;
  glogit_chain* c = nullptr;
  REQUIRE(glogit_fit(d, &opt, &c) == GLOGIT_OK);
  CHECK(glogit_chain_draws(c) == 100);
  CHECK(glogit_chain_params(c) == 4);
  CHECK(std::string(glogit_chain_param_name(c, 3)) == "p");
  long it = 0;
  CHECK(glogit_chain_iter(c, 0, &it) == GLOGIT_OK);
  CHECK(it == 103);
  double v = 0.0;
  CHECK(glogit_chain_get(c, 5, 3, &v) == GLOGIT_OK);
  CHECK(v > 0.0);
  CHECK(glogit_chain_slice_fallbacks(c) >= 0);
  CHECK(glogit_chain_warning_count(c) == 0);

  glogit_summary* s = nullptr;
  REQUIRE(glogit_summarize(c, d, &s) == GLOGIT_OK);
  CHECK(glogit_summary_params(s) == 4);
  glogit_param_summary ps;
  CHECK(glogit_summary_get(s, 0, &ps) == GLOGIT_OK);
  CHECK(std::string(ps.label) == "x0");
  CHECK(ps.q025 <= ps.q975);
  CHECK(glogit_summary_write_csv(s, (dir / "s.csv").string().c_str()) == GLOGIT_OK);
  CHECK(glogit_summary_write_txt(s, (dir / "s.txt").string().c_str()) == GLOGIT_OK);

  const std::string chain_path = (dir / "chain.csv").string();
  CHECK(glogit_chain_write_csv(c, chain_path.c_str()) == GLOGIT_OK);
  glogit_chain* back = nullptr;
  REQUIRE(glogit_chain_read_csv(chain_path.c_str(), &back) == GLOGIT_OK);
  CHECK(glogit_chain_draws(back) == 100);
  CHECK(glogit_diagnose_write(back, 20, dir.path().string().c_str()) == GLOGIT_OK);
  CHECK(fs::exists(dir / "geweke.csv"));
  CHECK(glogit_diagnose_write(back, 80, dir.path().string().c_str()) ==
        GLOGIT_ERR_INVALID_ARGUMENT);

  opt.p_fixed = 1;
  opt.fixed_p = 0.0;
  glogit_chain* bad = nullptr;
  CHECK(glogit_fit(d, &opt, &bad) == GLOGIT_ERR_INVALID_ARGUMENT);

  glogit_summary_free(s);
  glogit_chain_free(back);
  glogit_chain_free(c);
  glogit_dataset_free(d);
}

TEST_CASE("study and manifest through the C API") {
  testutil::TempDir dir;
  glogit_study_options opt;
  glogit_study_options_default(&opt);
  CHECK(opt.p_grid_len == 4);
  const double p_grid[] = {1.0};
  const long n_grid[] = {50};
  opt.p_grid = p_grid;
  opt.p_grid_len = 1;
  opt.n_grid = n_grid;
  opt.n_grid_len = 1;
  opt.reps = 2;
  opt.n_iter = 200;
  opt.burn_in = 50;
  glogit_study_result* r = nullptr;
  REQUIRE(glogit_study_run(&opt, &r) == GLOGIT_OK);
  CHECK(glogit_study_cells(r) == 1);
  double p = 0.0, mean = 0.0, sd = 0.0;
  long n = 0;
  int ok = 0, passes = -1;
  CHECK(glogit_study_cell_info(r, 0, &p, &n, &ok, &passes) == GLOGIT_OK);
  CHECK(p == 1.0);
  CHECK(n == 50);
  CHECK(ok == 2);
  CHECK(glogit_study_cell_stat(r, 0, 5, &mean, &sd) == GLOGIT_OK);
  CHECK(mean == doctest::Approx(1.0));
  CHECK(glogit_study_cell_stat(r, 0, 6, &mean, &sd) == GLOGIT_ERR_INVALID_ARGUMENT);
  CHECK(glogit_study_failure_count(r) == 0);
  CHECK(glogit_study_write(r, dir.path().string().c_str()) == GLOGIT_OK);
  CHECK(fs::exists(dir / "table.csv"));
  glogit_study_result_free(r);

  opt.scenario = 3;
  CHECK(glogit_study_run(&opt, &r) == GLOGIT_ERR_INVALID_ARGUMENT);

  glogit_manifest* m = nullptr;
  REQUIRE(glogit_manifest_create("fit", &m) == GLOGIT_OK);
  CHECK(glogit_manifest_set_flag(m, "iters", "10") == GLOGIT_OK);
  glogit_manifest_set_seed(m, 9);
  CHECK(glogit_manifest_set_input(m, (dir / "table.csv").string().c_str()) == GLOGIT_OK);
  CHECK(glogit_manifest_set_input(m, (dir / "nope").string().c_str()) == GLOGIT_ERR_IO);
  CHECK(glogit_manifest_add_output(m, "chain.csv") == GLOGIT_OK);
  CHECK(glogit_manifest_add_failure(m, "none") == GLOGIT_OK);
  CHECK(glogit_manifest_write(m, (dir / "manifest.json").string().c_str()) == GLOGIT_OK);
  std::ifstream in(dir / "manifest.json");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("\"seed\": 9") != std::string::npos);
  CHECK(text.find("fnv1a64") != std::string::npos);
  glogit_manifest_free(m);
}
