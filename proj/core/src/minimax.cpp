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

#include "fpdual/minimax.hpp"

#include <cmath>
#include <utility>

#include "fpdual/errors.hpp"

namespace fpdual {

Trace run_minimax(MinimaxMethod method, const SaddleProblem& P,
                  const DenseVector& x0, double alpha, int N,
                  const MinimaxOptions& options) {
  if (N < 1) throw ParameterError("run_minimax: N must be >= 1");
  if (alpha <= 0.0) throw ParameterError("run_minimax: alpha must be > 0");
  if (x0.size() != P.dim()) {
    throw ParameterError("run_minimax: dimension mismatch");
  }
  Trace trace;
  trace.method = method == MinimaxMethod::kEg   ? "eg"
                 : method == MinimaxMethod::kFeg ? "feg"
                                                 : "dual-feg";
  trace.horizon = N;
  if (P.lipschitz > 0.0 && alpha > (1.0 + 1e-12) / P.lipschitz) {
    trace.guarantee_flagged = true;
  }
  trace.iterates.push_back(x0);
  DenseVector z = DenseVector::Zero(x0.size());
  const bool record_z =
      options.keep_half && method == MinimaxMethod::kDualFeg;
  if (record_z) trace.zs.push_back(z);
  MetricSeries grad_sq;
  long calls = 0;
  for (int k = 0; k < N; ++k) {
    const DenseVector& xk = trace.iterates.back();
    const DenseVector gk = P.grad(xk);
    ++calls;
    grad_sq.push(k, gk.squaredNorm());
    DenseVector x_half, x_next;
    switch (method) {
      case MinimaxMethod::kEg: {
        x_half = xk - alpha * gk;
        const DenseVector gh = P.grad(x_half);
        ++calls;
        x_next = xk - alpha * gh;
        break;
      }
      case MinimaxMethod::kFeg: {
        const DenseVector anchor = xk + (x0 - xk) / (k + 1.0);
        x_half = anchor - static_cast<double>(k) / (k + 1.0) * alpha * gk;
        const DenseVector gh = P.grad(x_half);
        ++calls;
        x_next = anchor - alpha * gh;
        break;
      }
      case MinimaxMethod::kDualFeg: {
        x_half = xk - alpha * z - alpha * gk;
        const DenseVector gh = P.grad(x_half);
        ++calls;
        const double ratio = static_cast<double>(N - k - 1) / (N - k);
        x_next = x_half - ratio * alpha * (gh - gk);
        z = ratio * z - 1.0 / (N - k) * gh;
        break;
      }
    }
    if (options.keep_half) {
      trace.half_iterates.push_back(std::move(x_half));
      if (record_z) trace.zs.push_back(z);
    }
    trace.iterates.push_back(std::move(x_next));
  }
  trace.evals = calls;
  grad_sq.push(N, P.grad(trace.iterates.back()).squaredNorm());
  ++calls;
  trace.eval_calls_total = calls;
  trace.metrics["grad_norm_sq"] = std::move(grad_sq);
  return trace;
}

LyapunovSeries dual_feg_lyapunov(const SaddleProblem& P, const Trace& trace,
                                 double alpha) {
  if (trace.method != "dual-feg") {
    throw ParameterError("dual_feg_lyapunov: trace is not a dual-feg run");
  }
  const int N = trace.horizon;
  if (static_cast<int>(trace.half_iterates.size()) != N ||
      static_cast<int>(trace.zs.size()) != N + 1) {
    throw ParameterError(
        "dual_feg_lyapunov: run the method with keep_half enabled");
  }
  LyapunovSeries series;
  series.kind = LyapunovKind::kVDualFeg;
  const DenseVector gN = P.grad(trace.iterates[N]);
  for (int k = 0; k <= N - 1; ++k) {
    const DenseVector w = trace.zs[k] + gN;
    series.values.push_back(-alpha * w.squaredNorm() +
                            2.0 / (N - k) *
                                w.dot(trace.iterates[k] - trace.iterates[N]));
  }
  for (int k = 0; k <= N - 2; ++k) {
    const DenseVector& xh = trace.half_iterates[k];
    const DenseVector gh = P.grad(xh);
    const DenseVector gk = P.grad(trace.iterates[k]);
    series.mi.push_back((gN - gh).dot(trace.iterates[N] - xh));
    series.li.push_back((xh - trace.iterates[k]).squaredNorm() -
                        alpha * alpha *
                            (gh - gk).squaredNorm());
    // Difference identity: V_k - V_{k+1} equals the weighted MI/LI split.
    const double expect =
        2.0 / (static_cast<double>(N - k) * (N - k - 1)) * series.mi.back() +
        series.li.back() / (alpha * static_cast<double>(N - k) * (N - k));
    const double diff = series.values[k] - series.values[k + 1];
    series.max_identity_gap =
        std::max(series.max_identity_gap, std::abs(diff - expect));
  }
  for (size_t k = 0; k + 1 < series.values.size(); ++k) {
    const double jump = series.values[k + 1] - series.values[k];
    if (jump > series.max_increase) series.max_increase = jump;
  }
  const double scale = 1.0 + trace.iterates.front().squaredNorm();
  series.nonincreasing = series.max_increase <= 1e-9 * scale;
  return series;
}

double terminal_match_linear(const SaddleProblem& P, const DenseVector& x0,
                             double alpha, int N) {
  if (P.op.kind != MonotoneMap::Kind::kLinear) {
    throw ParameterError("terminal_match_linear: saddle operator not linear");
  }
  const Trace feg = run_minimax(MinimaxMethod::kFeg, P, x0, alpha, N);
  const Trace dual = run_minimax(MinimaxMethod::kDualFeg, P, x0, alpha, N);
  return (feg.iterates[N] - dual.iterates[N]).norm() / (1.0 + x0.norm());
}

double default_alpha(const SaddleProblem& P) {
  if (P.lipschitz <= 0.0) {
    throw ParameterError("default_alpha: problem has no Lipschitz constant");
  }
  return 1.0 / P.lipschitz;
}

}  // namespace fpdual
