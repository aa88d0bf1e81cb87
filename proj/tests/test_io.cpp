#include <doctest.h>

#include <fstream>
#include <sstream>

#include "glogit/errors.hpp"
#include "glogit/io.hpp"
#include "glogit/manifest.hpp"
#include "test_util.hpp"

using namespace glogit;
namespace fs = std::filesystem;

namespace {

void write(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 1e308, 123456789.123456789}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(-INFINITY) == "-inf");
}

TEST_CASE("simulated dataset round-trips through CSV") {
  testutil::TempDir dir;
  Eigen::VectorXd beta(3);
  beta << 1, -1, 0.5;
  RngStream rng(1);
  const Dataset d = simulate_dataset(beta, 0.7, 40, rng);
  write_dataset_csv(dir / "d.csv", d);
  CHECK(slurp(dir / "d.csv").substr(0, 9) == "y,x0,x1,x");
  const Dataset back = read_csv(dir / "d.csv");
  CHECK(back.n() == 40);
  CHECK(back.k() == 3);
  CHECK(back.names == d.names);
  CHECK(back.x == d.x);
  CHECK(back.y == d.y);
}

TEST_CASE("response column may sit anywhere") {
  testutil::TempDir dir;
  write(dir / "d.csv", "a, outcome ,b\r\n1.5,1,2\r\n\r\n-3,0,4e-1\r\n");
  const Dataset d = read_csv(dir / "d.csv", "outcome");
  CHECK(d.names == std::vector<std::string>{"a", "b"});
  CHECK(d.y == std::vector<int>{1, 0});
  CHECK(d.x(1, 1) == 0.4);
}

TEST_CASE("read_csv error contract") {
  testutil::TempDir dir;
  SUBCASE("missing file") { CHECK_THROWS_AS(read_csv(dir / "nope.csv"), IoError); }
  SUBCASE("empty file") {
    write(dir / "e.csv", "");
    CHECK_THROWS_AS(read_csv(dir / "e.csv"), DataError);
  }
  SUBCASE("header only") {
    write(dir / "h.csv", "y,x\n");
    CHECK_THROWS_WITH_AS(read_csv(dir / "h.csv"), doctest::Contains("no rows"), DataError);
  }
  SUBCASE("NA in row 7") {
    std::string text = "y,x\n";
    for (int i = 1; i <= 10; ++i) text += (i == 7 ? "1,NA\n" : "0,1.5\n");
    write(dir / "na.csv", text);
    try {
      read_csv(dir / "na.csv");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("row 7") != std::string::npos);
      CHECK(e.line() == 8);
      CHECK(e.column() == 3);
    }
  }
  SUBCASE("ragged row") {
    write(dir / "r.csv", "y,x\n1,2\n0\n");
    CHECK_THROWS_AS(read_csv(dir / "r.csv"), ParseError);
  }
  SUBCASE("non-binary response") {
    write(dir / "b.csv", "y,x\n1,2\n2,3\n");
    CHECK_THROWS_WITH_AS(read_csv(dir / "b.csv"), doctest::Contains("row 2"), DataError);
  }
  SUBCASE("missing response column") {
    write(dir / "m.csv", "z,x\n1,2\n");
    CHECK_THROWS_AS(read_csv(dir / "m.csv"), DataError);
  }
  SUBCASE("non-finite cells are rejected") {
    write(dir / "i.csv", "y,x\n1,inf\n");
    CHECK_THROWS_AS(read_csv(dir / "i.csv"), ParseError);
  }
}

TEST_CASE("chain CSV round-trip is byte-identical") {
  testutil::TempDir dir;
  Chain c;
  c.draws.resize(3, 3);
  c.draws << 0.1, -2.0 / 3.0, 0.3, 1e-17, 5.5, 0.3, -1.0, 2.0, 0.3;
  c.iters = {10, 20, 30};
  c.param_names = {"beta_0", "beta_1", "p"};
  write_chain_csv(dir / "a.csv", c);
  const Chain back = read_chain_csv(dir / "a.csv");
  CHECK(back.draws == c.draws);
  CHECK(back.iters == c.iters);
  write_chain_csv(dir / "b.csv", back);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
}

TEST_CASE("malformed chain files") {
  testutil::TempDir dir;
  write(dir / "h.csv", "it,beta_0,p\n1,2,3\n");
  CHECK_THROWS_AS(read_chain_csv(dir / "h.csv"), ParseError);
  write(dir / "o.csv", "iter,beta_0,p\n2,1,1\n2,1,1\n");
  CHECK_THROWS_AS(read_chain_csv(dir / "o.csv"), ParseError);
  write(dir / "f.csv", "iter,beta_0,p\n1.5,1,1\n");
  CHECK_THROWS_AS(read_chain_csv(dir / "f.csv"), ParseError);
  write(dir / "x.csv", "iter,beta_0,p\n1,abc,1\n");
  CHECK_THROWS_AS(read_chain_csv(dir / "x.csv"), ParseError);
}

TEST_CASE("diagnostics and summary files") {
  testutil::TempDir dir;
  RngStream rng(2);
  Chain c;
  c.draws.resize(400, 2);
  for (Eigen::Index i = 0; i < 400; ++i) {
    c.draws(i, 0) = rng.normal();
    c.draws(i, 1) = 0.3;
    c.iters.push_back(i + 1);
  }
  c.param_names = {"beta_0", "p"};
  write_diagnostics(c, 50, dir.path());
  const std::string geweke = slurp(dir / "geweke.csv");
  CHECK(geweke.find("parameter,z,pass\n") == 0);
  CHECK(geweke.find("p,nan,NA") != std::string::npos);
  const std::string acf_text = slurp(dir / "acf.csv");
  CHECK(acf_text.find("lag,beta_0,p\n0,1,1\n") == 0);
  CHECK(std::count(acf_text.begin(), acf_text.end(), '\n') == 52);
  CHECK(fs::exists(dir / "pacf.csv"));
  CHECK_THROWS_AS(write_diagnostics(c, 300, dir.path()), DomainError);

  const auto summary = summarize(c, {"const"});
  write_summary_csv(dir / "s.csv", summary);
  write_summary_txt(dir / "s.txt", summary);
  CHECK(slurp(dir / "s.csv").find("parameter,label,mean,sd,q2.5,median,q97.5") == 0);
  const std::string txt = slurp(dir / "s.txt");
  CHECK(std::count(txt.begin(), txt.end(), '\n') == 3);
  CHECK(txt.find("const") != std::string::npos);
}

TEST_CASE("writing into an unwritable location fails with IoError") {
  testutil::TempDir dir;
  write(dir / "file", "x");
  Chain c;
  c.draws.resize(1, 2);
  c.draws << 1, 1;
  c.iters = {1};
  c.param_names = {"beta_0", "p"};
  CHECK_THROWS_AS(write_chain_csv(dir / "file" / "chain.csv", c), IoError);
}

TEST_CASE("manifest JSON round-trip") {
  testutil::TempDir dir;
  write(dir / "in.csv", "y,x\n1,2\n");
  RunManifest m = RunManifest::begin("fit");
  m.flags = {{"iters", "100"}, {"data", "in.csv"}};
  m.seed = 17;
  m.input_path = (dir / "in.csv").string();
  m.input_digest = file_digest(dir / "in.csv");
  m.outputs = {"chain.csv"};
  m.failures = {"cell p0.3_n100 replicate 2: boom"};
  m.finish();
  m.write(dir / "manifest.json");
  const RunManifest back = RunManifest::from_json(slurp(dir / "manifest.json"));
  CHECK(back.command == "fit");
  CHECK(back.flags == m.flags);
  CHECK(back.seed == 17);
  CHECK(back.input_digest == m.input_digest);
  CHECK(back.failures == m.failures);
  CHECK(back.started.size() == 20);
  CHECK(hex_digest(0x1234) == "0000000000001234");
  CHECK_THROWS_AS(RunManifest::from_json("{"), ParseError);
  CHECK_THROWS_AS(RunManifest::from_json("{}"), ParseError);
}
