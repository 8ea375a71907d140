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
//
// Command line front end: config-driven experiment runs, step-size matrix
// synthesis, certificate verification, continuous-time integration and SVG
// rendering of result CSVs.
//
// Exit codes: 0 all assertions passed, 1 a bound or certificate failed,
// 2 configuration/usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fpdual/errors.hpp"
#include "fpdual/experiment.hpp"
#include "fpdual/family.hpp"
#include "fpdual/hduality.hpp"
#include "fpdual/hmatrix.hpp"
#include "fpdual/ode.hpp"
#include "fpdual/operators.hpp"
#include "fpdual/plot.hpp"
#include "fpdual/trace.hpp"

namespace {

using namespace fpdual;

constexpr int kExitOk = 0;
constexpr int kExitAssertionFailed = 1;
constexpr int kExitConfigError = 2;

// "kind:key=val,key=val" problem selector for the ode subcommand.
MonotoneMap parse_operator_spec(const std::string& spec) {
  std::string kind = spec;
  std::string args;
  if (const auto colon = spec.find(':'); colon != std::string::npos) {
    kind = spec.substr(0, colon);
    args = spec.substr(colon + 1);
  }
  int d = 4;
  std::uint64_t seed = 1;
  double mu = 0.0, delta = 0.1;
  bool have_seed = false;
  std::istringstream in(args);
  std::string kv;
  while (std::getline(in, kv, ',')) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("bad operator spec token '" + kv + "'");
    }
    const std::string key = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    if (key == "d") {
      d = std::stoi(val);
    } else if (key == "seed") {
      seed = std::stoull(val);
      have_seed = true;
    } else if (key == "mu") {
      mu = std::stod(val);
    } else if (key == "delta") {
      delta = std::stod(val);
    } else {
      throw ConfigError("unknown operator spec key '" + key + "'");
    }
  }
  if (kind == "rotation") {
    DenseMatrix R(2, 2);
    R << 0, 1, -1, 0;
    MonotoneMap A = MonotoneMap::linear(std::move(R), 0.0, "rotation");
    A.known_zero = DenseVector::Zero(2);
    return A;
  }
  if (kind == "random_linear_monotone") {
    if (!have_seed) throw ConfigError("random_linear_monotone needs seed=");
    return make_random_linear_monotone(d, seed, mu);
  }
  if (kind == "huber_gradient") return make_huber_gradient(d, delta);
  if (kind == "zero") return MonotoneMap::zero(d);
  throw ConfigError("unknown operator kind '" + kind + "'");
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            const std::string& out_dir, double scale) {
  ExperimentConfig config = load_config(config_path);
  if (seed) config.seed = *seed;
  apply_scale(config, scale);
  const ExperimentReport report = run_experiment(config);

  std::filesystem::create_directories(out_dir);
  const std::string csv_name =
      config.out_csv.empty() ? config.name + ".csv" : config.out_csv;
  const auto csv_path = (std::filesystem::path(out_dir) / csv_name).string();
  {
    std::ofstream out(csv_path);
    if (!out) throw ConfigError("cannot write '" + csv_path + "'");
    write_report_csv(report, out);
  }
  std::cout << "experiment " << report.name << ": wrote " << csv_path << " ("
            << report.wall_ms << " ms)\n";
  for (const auto& result : report.results) {
    std::cout << "  " << result.method << ": terminal " << result.metric
              << " = " << format_double(result.terminal);
    if (result.bound_checked) {
      std::cout << (result.bound_ok ? "  [bound ok, margin "
                                    : "  [BOUND VIOLATED, margin ")
                << format_double(result.worst_bound_gap) << "]";
    }
    std::cout << "\n";
  }
  for (const auto& note : report.notes) std::cout << "  note: " << note << "\n";
  if (config.plot) {
    for (const auto& file : plot_csv(csv_path, out_dir)) {
      std::cout << "  plot: " << file << "\n";
    }
  }
  return report.all_bounds_pass ? kExitOk : kExitAssertionFailed;
}

int cmd_synthesize(int N, double gamma, const std::string& p_csv,
                   const std::string& out_path) {
  PVector pv;
  if (!p_csv.empty()) {
    pv.N = N;
    std::vector<double> values;
    std::istringstream in(p_csv);
    std::string cell;
    while (std::getline(in, cell, ',')) values.push_back(std::stod(cell));
    if (static_cast<int>(values.size()) != N - 1) {
      throw ConfigError("--p needs exactly N-1 comma-separated values");
    }
    pv.p = DenseVector::Zero(N - 1);
    for (int i = 0; i < N - 1; ++i) pv.p(i) = values[i];
  } else {
    pv = interpolate_pvector(gamma, N);
  }
  const HMatrix H = synthesize(pv);
  const FamilyCertificate cert = certify(H, pv);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw ConfigError("cannot write '" + out_path + "'");
    out = &file;
  }
  write_hmatrix_csv(H, *out);
  if (!out_path.empty()) std::cout << "wrote " << out_path << "\n";

  std::cout << "certificate for N=" << N << ":\n"
            << "  max residual (closed form) = "
            << format_double(cert.max_residual) << "\n"
            << "  max residual (probe)       = "
            << format_double(cert.max_residual_probe) << "\n"
            << "  identity on random inputs  = "
            << format_double(cert.identity_residual_random) << "\n"
            << "  psd margin                 = "
            << format_double(cert.psd_margin) << "\n"
            << "  min multiplier             = "
            << format_double(cert.min_lambda) << "\n"
            << "  interior                   = "
            << (is_interior(pv) ? "yes" : "no (boundary point)") << "\n";
  const bool ok = cert.pass(1e-9) && cert.min_lambda >= -1e-12;
  std::cout << (ok ? "certificate PASS\n" : "certificate FAIL\n");
  return ok ? kExitOk : kExitAssertionFailed;
}

int cmd_verify(const std::string& method, int N, int trials,
               std::uint64_t seed) {
  FixedPointMethod fp;
  ProofWeights weights;
  bool forward;
  if (method == "ohm") {
    fp = FixedPointMethod::kOhm;
    weights = ohm_weights(N);
    forward = true;
  } else if (method == "dual-ohm") {
    fp = FixedPointMethod::kDualOhm;
    weights = dual_ohm_weights(N);
    forward = false;
  } else {
    throw ConfigError("verify supports methods: ohm, dual-ohm");
  }
  const HMatrix H = named_hmatrix(fp, N);
  const double tau = static_cast<double>(N);
  const QuadForm own = forward ? s_form(H, weights, tau)
                               : t_form(H, weights, tau);
  // The duality orbit is checked from the forward side in both cases.
  const HMatrix primal = forward ? H : anti_transpose(H);
  const ProofWeights primal_u =
      forward ? weights : dualize_weights(weights);
  const DualityReport report =
      verify_duality(primal, primal_u, tau, trials, seed);

  std::cout << "certificate report for " << method << ", N=" << N << ":\n"
            << "  min eigenvalue (" << (forward ? "forward" : "backward")
            << " structure) = " << format_double(own.min_eigenvalue()) << "\n"
            << "  min eigenvalue S = " << format_double(report.min_eig_s)
            << "\n"
            << "  min eigenvalue T = " << format_double(report.min_eig_t)
            << "\n"
            << "  duality discrepancy max |S(g) - T(F(g))| = "
            << format_double(report.max_discrepancy) << " over " << trials
            << " trials\n"
            << "  psd sign agreement = "
            << (report.sign_agreement ? "yes" : "NO") << "\n";
  const bool ok = own.min_eigenvalue() >= -1e-9 &&
                  report.max_discrepancy <= 1e-10 && report.sign_agreement;
  std::cout << (ok ? "verification PASS\n" : "verification FAIL\n");
  return ok ? kExitOk : kExitAssertionFailed;
}

void write_trajectory_csv(const OdeTrajectory& traj, std::ostream& out) {
  out << "t";
  const int d = static_cast<int>(traj.states.front().size());
  for (int i = 0; i < d; ++i) out << ",x" << i;
  for (const auto& [name, _] : traj.monitors) out << "," << name;
  out << "\n";
  for (size_t i = 0; i < traj.times.size(); ++i) {
    out << format_double(traj.times[i]);
    for (int j = 0; j < d; ++j) out << "," << format_double(traj.states[i](j));
    for (const auto& [_, series] : traj.monitors) {
      out << "," << format_double(series[i]);
    }
    out << "\n";
  }
}

int cmd_ode(const std::string& model, double T, int steps,
            const std::string& problem, double delta,
            const std::string& out_path) {
  const MonotoneMap A = parse_operator_spec(problem);
  DenseVector x0;
  if (A.name == "rotation") {
    x0 = DenseVector::Zero(2);
    x0(0) = 1.0;
  } else {
    x0 = DenseVector::Ones(A.dim) / std::sqrt(static_cast<double>(A.dim));
  }
  OdeTrajectory traj;
  bool monitors_ok = true;
  if (model == "anchor") {
    traj = integrate_anchor(A, x0, T, steps);
  } else if (model == "dual-anchor") {
    traj = integrate_dual_anchor(A, x0, T, steps);
    const MonitorReport mon = attach_monitors(traj, A);
    monitors_ok = mon.v_violations == 0 && mon.psi_violations == 0;
    std::cout << "monitors: V violations " << mon.v_violations
              << ", Psi violations " << mon.psi_violations << ", terminal V "
              << format_double(mon.v_terminal) << "\n";
  } else if (model == "dual-anchor-yosida") {
    traj = integrate_dual_anchor_yosida(A, delta, x0, T, steps);
    const MonotoneMap driver = yosida(A, delta);
    const MonitorReport mon = attach_monitors(traj, driver);
    monitors_ok = mon.v_violations == 0 && mon.psi_violations == 0;
    std::cout << "monitors: V violations " << mon.v_violations
              << ", Psi violations " << mon.psi_violations << "\n";
  } else {
    throw ConfigError("unknown model '" + model + "'");
  }
  if (traj.delta_trunc > 0.0) {
    std::cout << "terminal window delta = " << format_double(traj.delta_trunc)
              << ", truncation error bound = "
              << format_double(traj.trunc_error_bound) << "\n";
  }
  std::cout << "terminal |A X|^2 = "
            << format_double(traj.monitors.at("op_norm_sq").back()) << "\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot write '" + out_path + "'");
    write_trajectory_csv(traj, out);
    std::cout << "wrote " << out_path << "\n";
  }
  return monitors_ok ? kExitOk : kExitAssertionFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fpdual: primal/dual accelerated fixed-point and minimax methods, "
      "their step-size matrix calculus and convergence certificates"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run a config-driven experiment");
  std::string config_path, out_dir = ".";
  double scale = 1.0;
  std::optional<std::uint64_t> seed_override;
  std::uint64_t seed_value = 0;
  run->add_option("--config", config_path, "JSON experiment config")
      ->required();
  auto* seed_opt =
      run->add_option("--seed", seed_value, "override the config seed");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--scale", scale, "shrink N and problem sizes by factor");

  // synthesize
  auto* synth = app.add_subcommand(
      "synthesize", "build a family member and print its certificate");
  int synth_n = 0;
  double gamma = 0.5;
  std::string p_csv, synth_out;
  synth->add_option("--N", synth_n, "horizon")->required();
  synth->add_option("--gamma", gamma,
                    "segment parameter in (0,1); 1 is the forward endpoint");
  synth->add_option("--p", p_csv, "explicit p_1..p_{N-1}, comma separated");
  synth->add_option("--out", synth_out, "write the matrix CSV here");

  // verify
  auto* verify = app.add_subcommand(
      "verify", "certificate report for a named method");
  std::string verify_method;
  int verify_n = 0, trials = 50;
  std::uint64_t verify_seed = 7;
  verify->add_option("--method", verify_method, "ohm | dual-ohm")->required();
  verify->add_option("--N", verify_n, "horizon")->required();
  verify->add_option("--trials", trials, "random draws for the identity");
  verify->add_option("--seed", verify_seed, "rng seed");

  // ode
  auto* ode = app.add_subcommand("ode", "integrate a continuous-time model");
  std::string model, problem = "rotation", ode_out;
  double T = 10.0, delta = 0.01;
  int steps = 10000;
  ode->add_option("--model", model, "anchor | dual-anchor | dual-anchor-yosida")
      ->required();
  ode->add_option("--T", T, "terminal time");
  ode->add_option("--steps", steps, "grid steps");
  ode->add_option("--problem", problem,
                  "operator spec, e.g. random_linear_monotone:d=8,seed=1");
  ode->add_option("--delta", delta, "Yosida regularization parameter");
  ode->add_option("--out", ode_out, "trajectory CSV path");

  // plot
  auto* plot = app.add_subcommand("plot", "render an experiment CSV to SVG");
  std::string plot_in, plot_out = ".";
  plot->add_option("--in", plot_in, "experiment CSV")->required();
  plot->add_option("--out", plot_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (seed_opt->count() > 0) seed_override = seed_value;
      return cmd_run(config_path, seed_override, out_dir, scale);
    }
    if (synth->parsed()) {
      return cmd_synthesize(synth_n, gamma, p_csv, synth_out);
    }
    if (verify->parsed()) {
      return cmd_verify(verify_method, verify_n, trials, verify_seed);
    }
    if (ode->parsed()) {
      return cmd_ode(model, T, steps, problem, delta, ode_out);
    }
    if (plot->parsed()) {
      for (const auto& file : plot_csv(plot_in, plot_out)) {
        std::cout << "plot: " << file << "\n";
      }
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const SynthesisFailure& e) {
    std::cerr << "synthesis failure (column " << e.column() << "): "
              << e.what() << "\n";
    return kExitAssertionFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssertionFailed;
  }
  return kExitConfigError;
}
