#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "ptent/closed_form.hpp"
#include "ptent/curve.hpp"
#include "ptent/errors.hpp"
#include "ptent/oracle.hpp"

using namespace ptent;

namespace {

ModelParams unbroken() {
  ModelParams p;
  p.g = 0.7;
  p.kappa = 0.3;
  return p;
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "ptent_curve_io_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("curve samples agree with the closed-form solution") {
  ModelParams p = unbroken();
  std::vector<CurveRow> rows = sample_curve(p, 0.0, 10.0, 21);
  REQUIRE(rows.size() == 21);
  CHECK(rows.front().t == 0.0);
  CHECK(rows.back().t == doctest::Approx(10.0));
  MetricSolution sol(p);
  for (const CurveRow& r : rows) {
    EntropyPoint e = sol.entropy(r.t);
    CHECK(r.entropy == e.entropy);
    CHECK(r.lambda1 == e.lambda1);
    CHECK(r.lambda2 == e.lambda2);
    CHECK(r.mu_integral == sol.mu_integral(r.t));
  }
}

TEST_CASE("curve sampling validates its range") {
  CHECK_THROWS_AS(sample_curve(unbroken(), 1.0, 1.0, 10), InvalidParams);
  CHECK_THROWS_AS(sample_curve(unbroken(), 0.0, 1.0, 1), InvalidParams);
}

TEST_CASE("run configuration validation") {
  RunConfig cfg;
  cfg.params = unbroken();
  CHECK_NOTHROW(validate(cfg));
  cfg.t_end = cfg.t_start;
  CHECK_THROWS_AS(validate(cfg), InvalidParams);
  cfg = RunConfig{};
  cfg.params = unbroken();
  cfg.samples = 1;
  CHECK_THROWS_AS(validate(cfg), InvalidParams);
  cfg = RunConfig{};
  cfg.params = unbroken();
  cfg.bath_sizes = {};
  CHECK_THROWS_AS(validate(cfg), InvalidParams);
  cfg.bath_sizes = {1, 0};
  CHECK_THROWS_AS(validate(cfg), InvalidParams);
  cfg = RunConfig{};
  cfg.params = unbroken();
  cfg.params.c1 = 0.0;
  CHECK_THROWS_AS(validate(cfg), InvalidParams);
}

TEST_CASE("CSV carries the version line, parameters, schema, and data") {
  ModelParams p = unbroken();
  std::vector<CurveRow> rows = sample_curve(p, 0.0, 1.0, 3);
  std::string csv = curve_csv(p, rows);

  std::istringstream in(csv);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "# ptent 1.0.0 curve");
  REQUIRE(std::getline(in, line));
  CHECK(line.rfind("# nu=1 g=0.69999999999999996 kappa=0.29999999999999999 N=1", 0) ==
        0);
  REQUIRE(std::getline(in, line));
  CHECK(line == "t,S,lambda1,lambda2,mu_I");
  int data_lines = 0;
  while (std::getline(in, line)) {
    ++data_lines;
    CHECK(std::count(line.begin(), line.end(), ',') == 4);
  }
  CHECK(data_lines == 3);

  // the first data row starts at t = 0 with S = ln 2 (last digits vary with libm)
  CHECK(csv.find("\n0,0.6931471805599") != std::string::npos);
}

TEST_CASE("serialization is byte-identical across repeated runs") {
  ModelParams p = unbroken();
  std::vector<CurveRow> rows = sample_curve(p, 0.0, 10.0, 101);
  CHECK(curve_csv(p, rows) == curve_csv(p, sample_curve(p, 0.0, 10.0, 101)));
  CHECK(curve_json(p, rows) == curve_json(p, sample_curve(p, 0.0, 10.0, 101)));
}

TEST_CASE("JSON round-trips through a parser with full precision") {
  ModelParams p = unbroken();
  p.n_bath = 2;
  std::vector<CurveRow> rows = sample_curve(p, 0.0, 2.0, 5);
  nlohmann::json j = nlohmann::json::parse(curve_json(p, rows));
  CHECK(j["version"] == "ptent 1.0.0");
  CHECK(j["params"]["g"] == 0.7);
  CHECK(j["params"]["n_bath"] == 2);
  REQUIRE(j["rows"].size() == 5);
  CHECK(j["rows"][0]["S"].get<double>() == rows[0].entropy);
  CHECK(j["rows"][4]["mu_I"].get<double>() == rows[4].mu_integral);
}

TEST_CASE("verification reports serialize to JSON with the fixed keys") {
  VerifyOutcome out;
  out.reports.push_back(make_report("demo.check", 1e-12, 1e-10, "a note"));
  out.findings.push_back(make_report("finding.demo", 0.5, 1.0));
  out.overall_pass = true;
  nlohmann::json j = nlohmann::json::parse(verify_json(out));
  CHECK(j["overall_pass"] == true);
  REQUIRE(j["reports"].size() == 1);
  CHECK(j["reports"][0]["name"] == "demo.check");
  CHECK(j["reports"][0]["max_residual"].get<double>() == 1e-12);
  CHECK(j["reports"][0]["tolerance"].get<double>() == 1e-10);
  CHECK(j["reports"][0]["pass"] == true);
  CHECK(j["reports"][0]["notes"] == "a note");
  CHECK(j["findings"][0]["name"] == "finding.demo");
}

TEST_CASE("verification text shows one status line per check") {
  VerifyOutcome out;
  out.reports.push_back(make_report("good.check", 1e-12, 1e-10));
  out.reports.push_back(make_report("bad.check", 1.0, 1e-10, "explanation"));
  out.findings.push_back(make_report("finding.demo", 0.0, 0.0));
  out.overall_pass = false;
  std::string text = verify_text(out);
  CHECK(text.find("[PASS] good.check") != std::string::npos);
  CHECK(text.find("[FAIL] bad.check") != std::string::npos);
  CHECK(text.find("explanation") != std::string::npos);
  CHECK(text.find("[INFO] finding.demo") != std::string::npos);
  CHECK(text.find("overall: FAIL\n") != std::string::npos);
}

TEST_CASE("atomic writes leave a finished file and no temp behind") {
  auto dir = scratch_dir();
  auto path = dir / "sub" / "curve.csv";
  std::filesystem::remove_all(dir / "sub");
  atomic_write(path.string(), "hello\n");
  CHECK(slurp(path) == "hello\n");
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  atomic_write(path.string(), "replaced\n");
  CHECK(slurp(path) == "replaced\n");
  std::filesystem::remove_all(dir / "sub");
}

TEST_CASE("bath-size suffix lands before the extension") {
  CHECK(with_bath_suffix("out.csv", 3) == "out_N3.csv");
  CHECK(with_bath_suffix("a/b/curve.json", 12) == "a/b/curve_N12.json");
  CHECK(with_bath_suffix("noext", 2) == "noext_N2");
}
