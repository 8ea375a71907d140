#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fpdual/errors.hpp"
#include "fpdual/experiment.hpp"
#include "fpdual/plot.hpp"

using namespace fpdual;

namespace {

const char* kOuyangConfig = R"json({
  "name": "ouyang-desk",
  "problem": {"kind": "ouyang_xu", "n": 12},
  "methods": ["eg", "feg", "dual-feg"],
  "alpha": 1.0,
  "N": 200,
  "x0": "zero"
})json";

}  // namespace

TEST_CASE("config parsing and validation") {
  const ExperimentConfig config = parse_config(kOuyangConfig);
  CHECK(config.problem.kind == "ouyang_xu");
  CHECK(config.N == 200);
  CHECK(config.methods.size() == 3);

  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"methods": ["feg"]})"), ConfigError);
  CHECK_THROWS_AS(
      parse_config(
          R"({"problem": {"kind": "ouyang_xu", "n": 4}, "methods": ["sgd"]})"),
      ConfigError);
  // Random generators demand a seed.
  CHECK_THROWS_AS(
      run_experiment(parse_config(
          R"({"problem": {"kind": "random_linear_monotone", "d": 4},
              "methods": ["feg"], "N": 5})")),
      ConfigError);
  // Fixed-point methods need a resolvent.
  CHECK_THROWS_AS(
      run_experiment(parse_config(
          R"({"problem": {"kind": "u_squared_v"},
              "methods": ["ohm"], "N": 5})")),
      ConfigError);
}

TEST_CASE("problem specs round trip through their json form") {
  ProblemSpec spec;
  spec.kind = "random_linear_monotone";
  spec.d = 6;
  spec.mu = 0.25;
  spec.seed = 42;
  const ProblemSpec back = parse_problem_spec(problem_spec_json(spec));
  CHECK(back.kind == spec.kind);
  CHECK(back.d == 6);
  CHECK(back.mu == doctest::Approx(0.25));
  REQUIRE(back.seed.has_value());
  CHECK(*back.seed == 42);
  CHECK_THROWS_AS(parse_problem_spec("{"), ConfigError);
}

TEST_CASE("bounds pass on the desk-scale worst-case instance") {
  const ExperimentConfig config = parse_config(kOuyangConfig);
  const ExperimentReport report = run_experiment(config);
  CHECK(report.bound_available);
  CHECK(report.all_bounds_pass);
  for (const auto& result : report.results) {
    if (result.method == "eg") CHECK_FALSE(result.bound_checked);
    if (result.method == "feg") CHECK(result.bound_checked);
  }
  // Emitted bound curves decrease monotonically.
  for (size_t k = 1; k < report.bound_grad.size(); ++k) {
    CHECK(report.bound_grad[k] < report.bound_grad[k - 1]);
  }
}

TEST_CASE("csv output is deterministic byte for byte") {
  const ExperimentConfig config = parse_config(kOuyangConfig);
  std::ostringstream a, b;
  write_report_csv(run_experiment(config), a);
  write_report_csv(run_experiment(config), b);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("method,iter,metric,value\n", 0) == 0);
}

TEST_CASE("zero-step config echoes initial metrics") {
  ExperimentConfig config = parse_config(kOuyangConfig);
  config.N = 0;
  const ExperimentReport report = run_experiment(config);
  for (const auto& result : report.results) {
    REQUIRE(result.series.iters.size() == 1);
    CHECK(result.series.iters[0] == 0);
  }
}

TEST_CASE("fixed-point methods run on linear monotone instances") {
  const ExperimentConfig config = parse_config(R"json({
    "name": "fp-suite",
    "problem": {"kind": "random_linear_monotone", "d": 6, "seed": 11},
    "methods": ["ohm", "dual-ohm", "appm", "dual-ohm-prox", "composed"],
    "N": 30,
    "x0": "random_unit",
    "seed": 3
  })json");
  const ExperimentReport report = run_experiment(config);
  CHECK(report.all_bounds_pass);
  for (const auto& result : report.results) {
    CHECK(result.metric == "residual_sq");
    CHECK(result.bound_checked);
  }
}

TEST_CASE("strongly monotone runs log the early-plateau note") {
  const ExperimentConfig config = parse_config(R"json({
    "problem": {"kind": "ouyang_xu", "n": 10, "mu": 0.1},
    "methods": ["feg", "dual-feg"],
    "alpha": 0.0,
    "N": 300,
    "x0": "zero"
  })json");
  const ExperimentReport report = run_experiment(config);
  REQUIRE(report.notes.size() == 1);
  CHECK(report.notes[0].find("early-plateau") != std::string::npos);
}

TEST_CASE("apply_scale shrinks sizes with floors") {
  ExperimentConfig config = parse_config(kOuyangConfig);
  apply_scale(config, 0.25);
  CHECK(config.N == 50);
  CHECK(config.problem.n == 3);
  apply_scale(config, 1e-6);
  CHECK(config.N == 1);
  CHECK(config.problem.n == 2);
  CHECK_THROWS_AS(apply_scale(config, 0.0), ConfigError);
}

TEST_CASE("every shipped config parses and runs at reduced scale") {
  const char* names[] = {
      "bilinear_trajectories.json", "u_squared_v.json",
      "ouyang_xu.json",             "ouyang_xu_mu.json",
      "ouyang_xu_desk.json",        "huber.json",
      "fixed_point_suite.json"};
  for (const char* name : names) {
    CAPTURE(name);
    ExperimentConfig config =
        load_config(std::string(FPDUAL_CONFIG_DIR) + "/" + name);
    apply_scale(config, 0.05);  // keeps N above the composed-schedule minimum
    const ExperimentReport report = run_experiment(config);
    CHECK_FALSE(report.results.empty());
    CHECK(report.all_bounds_pass);
  }
}

TEST_CASE("plot renders one svg per metric and validates schema") {
  const ExperimentConfig config = parse_config(kOuyangConfig);
  const ExperimentReport report = run_experiment(config);
  const auto tmp = std::filesystem::temp_directory_path() / "fpdual_plot_test";
  std::filesystem::create_directories(tmp);
  const auto csv_path = (tmp / "report.csv").string();
  {
    std::ofstream out(csv_path);
    write_report_csv(report, out);
  }
  const auto files = plot_csv(csv_path, tmp.string());
  REQUIRE(files.size() == 1);
  std::ifstream svg(files[0]);
  std::stringstream buf;
  buf << svg.rdbuf();
  const std::string body = buf.str();
  CHECK(body.find("<svg") != std::string::npos);
  // Three method curves plus the dashed bound.
  CHECK(body.find("stroke-dasharray") != std::string::npos);
  CHECK(body.find(">feg<") != std::string::npos);
  CHECK(body.find(">bound<") != std::string::npos);

  const auto empty_path = (tmp / "empty.csv").string();
  std::ofstream(empty_path).close();
  CHECK_THROWS_AS(plot_csv(empty_path, tmp.string()), ParseError);
  const auto bad_path = (tmp / "bad.csv").string();
  {
    std::ofstream out(bad_path);
    out << "wrong,header\n";
  }
  CHECK_THROWS_AS(plot_csv(bad_path, tmp.string()), ParseError);
}
