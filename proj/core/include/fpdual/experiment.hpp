// Copyright 2026 The fpdual Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FPDUAL_EXPERIMENT_HPP_
#define FPDUAL_EXPERIMENT_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fpdual/operators.hpp"
#include "fpdual/trace.hpp"

namespace fpdual {

// Problem selector for the experiment harness. Random generators require an
// explicit seed.
struct ProblemSpec {
  std::string kind;  // bilinear_uv | bilinear_matrix | u_squared_v |
                     // ouyang_xu | huber_lagrangian | random_linear_monotone
  int n = 0;
  int m = 0;
  int d = 0;
  double mu = 0.0;
  double delta = 0.1;
  std::optional<std::uint64_t> seed;
};

// A config is a JSON document; see configs/ and the README for the schema.
struct ExperimentConfig {
  std::string name = "experiment";
  ProblemSpec problem;
  std::vector<std::string> methods;
  double alpha = 0.0;  // 0 selects 1/L
  int N = 0;
  int nprime = 0;  // composed schedule split, 0 selects N-1
  std::string x0_kind = "zero";  // zero | random_unit | random_normal | explicit
  std::vector<double> x0_values;
  std::optional<std::uint64_t> seed;  // initial-point randomness
  std::string out_csv;
  bool plot = false;
  bool assert_bounds = true;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

// Shrinks N and the problem size by `factor` (sizes floor at their minima);
// used for desk-scale replays of full-size configs.
void apply_scale(ExperimentConfig& config, double factor);

struct MethodResult {
  std::string method;
  std::string metric;  // residual_sq or grad_norm_sq
  MetricSeries series;
  double terminal = 0.0;
  bool bound_checked = false;
  bool bound_ok = true;
  double worst_bound_gap = 0.0;  // positive = violation
};

struct ExperimentReport {
  std::string name;
  std::vector<MethodResult> results;
  // Worst-case reference curve b_k, emitted per metric when the solution is
  // known: 4 R^2 / (alpha^2 k^2) for gradient norms, 4 R^2 / k^2 for
  // fixed-point residuals, k = 1..N.
  bool bound_available = false;
  std::vector<double> bound_grad;
  std::vector<double> bound_residual;
  double alpha = 0.0;
  bool all_bounds_pass = true;
  double wall_ms = 0.0;
  std::vector<std::string> notes;  // soft observations, logged not asserted
};

// Runs every configured method on the configured problem. Deterministic for
// a fixed config (all randomness flows through the stated seeds).
ExperimentReport run_experiment(const ExperimentConfig& config);

// CSV with header method,iter,metric,value; methods in config order followed
// by the bound rows. Byte-identical across runs of the same config.
void write_report_csv(const ExperimentReport& report, std::ostream& out);

// Builds the problem instance a ProblemSpec selects (throws ConfigError for
// unknown kinds or missing seeds).
SaddleProblem make_problem(const ProblemSpec& spec);

// Round-trippable JSON form of a problem spec (the "problem" block of a
// config document).
std::string problem_spec_json(const ProblemSpec& spec);
ProblemSpec parse_problem_spec(const std::string& json_text);

}  // namespace fpdual

#endif  // FPDUAL_EXPERIMENT_HPP_
