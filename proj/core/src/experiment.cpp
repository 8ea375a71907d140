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

#include "fpdual/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fpdual/errors.hpp"
#include "fpdual/fixedpoint.hpp"
#include "fpdual/minimax.hpp"
#include "fpdual/rng.hpp"

namespace fpdual {

namespace {

const std::set<std::string> kMinimaxMethods = {"eg", "feg", "dual-feg"};
const std::set<std::string> kFixedPointMethods = {
    "ohm", "dual-ohm", "appm", "dual-ohm-prox", "composed"};

ProblemSpec parse_problem(const nlohmann::json& j) {
  ProblemSpec spec;
  if (!j.contains("kind")) throw ConfigError("problem.kind is required");
  spec.kind = j.at("kind").get<std::string>();
  spec.n = j.value("n", 0);
  spec.m = j.value("m", 0);
  spec.d = j.value("d", 0);
  spec.mu = j.value("mu", 0.0);
  spec.delta = j.value("delta", 0.1);
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  return spec;
}

}  // namespace

std::string problem_spec_json(const ProblemSpec& spec) {
  nlohmann::json j;
  j["kind"] = spec.kind;
  if (spec.n > 0) j["n"] = spec.n;
  if (spec.m > 0) j["m"] = spec.m;
  if (spec.d > 0) j["d"] = spec.d;
  if (spec.mu != 0.0) j["mu"] = spec.mu;
  if (spec.delta != 0.1) j["delta"] = spec.delta;
  if (spec.seed) j["seed"] = *spec.seed;
  return j.dump();
}

ProblemSpec parse_problem_spec(const std::string& json_text) {
  try {
    return parse_problem(nlohmann::json::parse(json_text));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("problem spec parse failure: ") + e.what());
  }
}

ExperimentConfig parse_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config parse failure: ") + e.what());
  }
  try {
    ExperimentConfig config;
    config.name = j.value("name", std::string("experiment"));
    if (!j.contains("problem")) throw ConfigError("problem block is required");
    config.problem = parse_problem(j.at("problem"));
    if (!j.contains("methods") || !j.at("methods").is_array() ||
        j.at("methods").empty()) {
      throw ConfigError("methods must be a non-empty array");
    }
    for (const auto& method : j.at("methods")) {
      const std::string name = method.get<std::string>();
      if (!kMinimaxMethods.count(name) && !kFixedPointMethods.count(name)) {
        throw ConfigError("unknown method '" + name + "'");
      }
      config.methods.push_back(name);
    }
    config.alpha = j.value("alpha", 0.0);
    config.N = j.value("N", 0);
    if (config.N < 0) throw ConfigError("N must be >= 0");
    config.nprime = j.value("nprime", 0);
    if (j.contains("x0")) {
      const auto& x0 = j.at("x0");
      if (x0.is_string()) {
        config.x0_kind = x0.get<std::string>();
        if (config.x0_kind != "zero" && config.x0_kind != "random_unit" &&
            config.x0_kind != "random_normal") {
          throw ConfigError(
              "x0 must be zero, random_unit, random_normal or a number array");
        }
      } else if (x0.is_array()) {
        config.x0_kind = "explicit";
        for (const auto& v : x0) config.x0_values.push_back(v.get<double>());
      } else {
        throw ConfigError("x0 must be zero, random_unit or a number array");
      }
    }
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    config.out_csv = j.value("out", std::string());
    config.plot = j.value("plot", false);
    config.assert_bounds = j.value("assert_bounds", true);
    return config;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void apply_scale(ExperimentConfig& config, double factor) {
  if (factor <= 0.0) throw ConfigError("scale factor must be positive");
  if (factor == 1.0) return;
  auto scale_int = [factor](int v, int floor_at) {
    if (v == 0) return 0;
    return std::max(floor_at, static_cast<int>(std::llround(v * factor)));
  };
  config.N = scale_int(config.N, 1);
  config.problem.n = scale_int(config.problem.n, 2);
  config.problem.m = scale_int(config.problem.m, 1);
  config.problem.d = scale_int(config.problem.d, 1);
  if (config.nprime > 0) {
    config.nprime = std::min(scale_int(config.nprime, 2), config.N - 1);
  }
}

SaddleProblem make_problem(const ProblemSpec& spec) {
  const bool random_kind = spec.kind == "random_linear_monotone" ||
                           spec.kind == "huber_lagrangian";
  if (random_kind && !spec.seed) {
    throw ConfigError("problem '" + spec.kind + "' requires a seed");
  }
  if (spec.kind == "bilinear_uv") return make_bilinear_uv();
  if (spec.kind == "u_squared_v") return make_u_squared_v();
  if (spec.kind == "ouyang_xu") {
    if (spec.n < 2) throw ConfigError("ouyang_xu requires n >= 2");
    return make_ouyang_xu(spec.n, spec.mu);
  }
  if (spec.kind == "huber_lagrangian") {
    if (spec.n < 1 || spec.m < 1) {
      throw ConfigError("huber_lagrangian requires n and m");
    }
    return make_huber_lagrangian_random(spec.n, spec.m, spec.delta,
                                        *spec.seed);
  }
  if (spec.kind == "random_linear_monotone") {
    if (spec.d < 1) throw ConfigError("random_linear_monotone requires d");
    return SaddleProblem::from_monotone(
        make_random_linear_monotone(spec.d, *spec.seed, spec.mu));
  }
  if (spec.kind == "bilinear_matrix") {
    if (spec.n < 1 || spec.m < 1 || !spec.seed) {
      throw ConfigError("bilinear_matrix requires n, m and a seed");
    }
    Rng rng(*spec.seed);
    DenseMatrix M =
        rng.normal_matrix(spec.n, spec.m) / std::sqrt(double(spec.n));
    return make_bilinear_matrix(M);
  }
  throw ConfigError("unknown problem kind '" + spec.kind + "'");
}

namespace {

DenseVector resolve_x0(const ExperimentConfig& config, int dim) {
  if (config.x0_kind == "zero") return DenseVector::Zero(dim);
  if (config.x0_kind == "random_unit" || config.x0_kind == "random_normal") {
    if (!config.seed) {
      throw ConfigError("random x0 requires a top-level seed");
    }
    Rng rng(*config.seed);
    return config.x0_kind == "random_unit" ? rng.unit_vector(dim)
                                           : rng.normal_vector(dim);
  }
  if (static_cast<int>(config.x0_values.size()) != dim) {
    throw ConfigError("explicit x0 has wrong dimension");
  }
  DenseVector x(dim);
  for (int i = 0; i < dim; ++i) x(i) = config.x0_values[i];
  return x;
}

// Per-method worst-case assertion against the reference curve. FEG carries a
// guarantee at every index, the dual methods only at the terminal one, and
// EG has no 1/k^2 guarantee at all.
void check_bounds(MethodResult& result, const ExperimentReport& report,
                  int N) {
  const std::vector<double>& bound = result.metric == "grad_norm_sq"
                                         ? report.bound_grad
                                         : report.bound_residual;
  if (bound.empty() || result.method == "eg") return;
  result.bound_checked = true;
  const double tol = 1e-9;
  auto value_at = [&](int iter) -> const double* {
    for (size_t i = 0; i < result.series.iters.size(); ++i) {
      if (result.series.iters[i] == iter) return &result.series.values[i];
    }
    return nullptr;
  };
  auto gap = [&](int iter, double b) {
    const double* v = value_at(iter);
    return v == nullptr ? 0.0 : *v - b;
  };
  double worst = -1e300;
  if (result.method == "feg") {
    for (int k = 1; k <= N; ++k) worst = std::max(worst, gap(k, bound[k - 1]));
  } else if (result.method == "dual-feg") {
    worst = gap(N, bound[N - 1]);
  } else if (result.method == "ohm" || result.method == "appm") {
    // residual at iterate j obeys the curve at index j+1
    for (int j = 0; j < static_cast<int>(result.series.iters.size()); ++j) {
      const int iter = result.series.iters[j];
      if (iter + 1 <= N) {
        worst = std::max(worst, result.series.values[j] - bound[iter]);
      }
    }
  } else {  // dual-ohm, dual-ohm-prox, composed: terminal guarantee
    worst = gap(N - 1, bound[N - 1]);
  }
  result.worst_bound_gap = worst;
  result.bound_ok = worst <= tol;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();
  ExperimentReport report;
  report.name = config.name;

  const SaddleProblem problem = make_problem(config.problem);
  const int dim = problem.dim();
  const DenseVector x0 = resolve_x0(config, dim);
  const int N = config.N;

  const bool wants_fp =
      std::any_of(config.methods.begin(), config.methods.end(),
                  [](const std::string& m) {
                    return kFixedPointMethods.count(m) > 0;
                  });
  NonexpansiveMap T;
  if (wants_fp) {
    if (!has_resolvent(problem.op)) {
      throw ConfigError("fixed-point methods need a resolvent; problem '" +
                        problem.name + "' has none");
    }
    T = nonexpansive_from_monotone(problem.op, 1.0);
  }

  double alpha = config.alpha;
  if (alpha <= 0.0) alpha = default_alpha(problem);
  report.alpha = alpha;

  if (problem.known_saddle) {
    report.bound_available = true;
    const double r2 = (x0 - *problem.known_saddle).squaredNorm();
    for (int k = 1; k <= N; ++k) {
      report.bound_grad.push_back(4.0 * r2 / (alpha * alpha * k * k));
      report.bound_residual.push_back(4.0 * r2 / (static_cast<double>(k) * k));
    }
  }

  for (const std::string& name : config.methods) {
    MethodResult result;
    result.method = name;
    result.metric =
        kMinimaxMethods.count(name) ? "grad_norm_sq" : "residual_sq";
    if (N == 0) {
      // Zero-step run: echo the initial metric only.
      if (result.metric == "grad_norm_sq") {
        result.series.push(0, problem.grad(x0).squaredNorm());
      } else {
        result.series.push(0, (x0 - T(x0)).squaredNorm());
      }
      result.terminal = result.series.values.back();
      report.results.push_back(std::move(result));
      continue;
    }
    Trace trace;
    if (name == "eg") {
      trace = run_minimax(MinimaxMethod::kEg, problem, x0, alpha, N);
    } else if (name == "feg") {
      trace = run_minimax(MinimaxMethod::kFeg, problem, x0, alpha, N);
    } else if (name == "dual-feg") {
      trace = run_minimax(MinimaxMethod::kDualFeg, problem, x0, alpha, N);
    } else if (name == "ohm") {
      trace = run_ohm(T, x0, N);
    } else if (name == "dual-ohm") {
      trace = run_dual_ohm(T, x0, N);
    } else if (name == "appm") {
      trace = run_proximal_form(ProximalKind::kAppm, problem.op, x0, N);
    } else if (name == "dual-ohm-prox") {
      trace = run_proximal_form(ProximalKind::kDualOhmProx, problem.op, x0, N);
    } else if (name == "composed") {
      if (N < 3) throw ConfigError("composed needs N >= 3");
      const int nprime = config.nprime > 0 ? config.nprime : N - 1;
      trace = run_composed(T, x0, N, nprime);
    }
    result.series = trace.metrics.at(result.metric);
    result.terminal = result.series.values.back();
    if (config.assert_bounds) check_bounds(result, report, N);
    report.results.push_back(std::move(result));
  }

  report.all_bounds_pass =
      std::all_of(report.results.begin(), report.results.end(),
                  [](const MethodResult& r) { return r.bound_ok; });

  // Soft observation on strongly monotone instances: the dual gradient
  // method reaches its plateau early.
  if (problem.strong_mu > 0.0 && N >= 10) {
    const MethodResult* feg = nullptr;
    const MethodResult* dual = nullptr;
    for (const auto& r : report.results) {
      if (r.method == "feg") feg = &r;
      if (r.method == "dual-feg") dual = &r;
    }
    if (feg != nullptr && dual != nullptr) {
      const int probe = N / 10;
      double feg_v = 0.0, dual_v = 0.0;
      for (size_t i = 0; i < feg->series.iters.size(); ++i) {
        if (feg->series.iters[i] == probe) feg_v = feg->series.values[i];
      }
      for (size_t i = 0; i < dual->series.iters.size(); ++i) {
        if (dual->series.iters[i] == probe) dual_v = dual->series.values[i];
      }
      std::ostringstream note;
      note << "early-plateau check at k=" << probe << ": dual-feg=" << dual_v
           << (dual_v < feg_v ? " < " : " >= ") << "feg=" << feg_v;
      report.notes.push_back(note.str());
    }
  }

  report.wall_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t_start)
                       .count();
  return report;
}

void write_report_csv(const ExperimentReport& report, std::ostream& out) {
  out << "method,iter,metric,value\n";
  for (const auto& result : report.results) {
    for (size_t i = 0; i < result.series.iters.size(); ++i) {
      out << result.method << "," << result.series.iters[i] << ","
          << result.metric << "," << format_double(result.series.values[i])
          << "\n";
    }
  }
  if (report.bound_available) {
    std::set<std::string> metrics;
    for (const auto& r : report.results) metrics.insert(r.metric);
    for (const auto& metric : metrics) {
      const auto& bound = metric == "grad_norm_sq" ? report.bound_grad
                                                   : report.bound_residual;
      for (size_t k = 0; k < bound.size(); ++k) {
        out << "bound," << (k + 1) << "," << metric << ","
            << format_double(bound[k]) << "\n";
      }
    }
  }
}

}  // namespace fpdual
