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

#include "fpdual/fixedpoint.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "fpdual/errors.hpp"

namespace fpdual {

Trace run_ohm(const NonexpansiveMap& T, const DenseVector& y0, int N) {
  if (N < 1) throw ParameterError("run_ohm: N must be >= 1");
  Trace trace;
  trace.method = "ohm";
  trace.horizon = N;
  trace.iterates.push_back(y0);
  MetricSeries res_sq;
  long calls = 0;
  for (int k = 0; k < N; ++k) {
    const DenseVector& yk = trace.iterates.back();
    const DenseVector Tyk = T(yk);
    ++calls;
    res_sq.push(k, (yk - Tyk).squaredNorm());
    trace.iterates.push_back(
        DenseVector((k + 1.0) / (k + 2.0) * Tyk + 1.0 / (k + 2.0) * y0));
  }
  trace.evals = calls;
  const DenseVector& last = trace.iterates.back();
  res_sq.push(N, (last - T(last)).squaredNorm());
  ++calls;
  trace.eval_calls_total = calls;
  trace.metrics["residual_sq"] = std::move(res_sq);
  return trace;
}

Trace run_ohm_momentum(const NonexpansiveMap& T, const DenseVector& y0,
                       int N) {
  if (N < 1) throw ParameterError("run_ohm_momentum: N must be >= 1");
  Trace trace;
  trace.method = "ohm-momentum";
  trace.horizon = N;
  trace.iterates.push_back(y0);
  MetricSeries res_sq;
  long calls = 0;
  DenseVector T_prev = y0;  // T y_{-1} = y_0
  for (int k = 0; k < N; ++k) {
    const DenseVector& yk = trace.iterates.back();
    const DenseVector Tyk = T(yk);
    ++calls;
    res_sq.push(k, (yk - Tyk).squaredNorm());
    trace.iterates.push_back(DenseVector(yk - 1.0 / (k + 2.0) * (yk - Tyk) +
                                         static_cast<double>(k) / (k + 2.0) *
                                             (Tyk - T_prev)));
    T_prev = Tyk;
  }
  trace.evals = calls;
  const DenseVector& last = trace.iterates.back();
  res_sq.push(N, (last - T(last)).squaredNorm());
  ++calls;
  trace.eval_calls_total = calls;
  trace.metrics["residual_sq"] = std::move(res_sq);
  return trace;
}

Trace run_dual_ohm(const NonexpansiveMap& T, const DenseVector& y0, int N) {
  if (N < 1) throw ParameterError("run_dual_ohm: N must be >= 1");
  Trace trace;
  trace.method = "dual-ohm";
  trace.horizon = N;
  trace.iterates.push_back(y0);
  trace.zs.push_back(DenseVector::Zero(y0.size()));
  MetricSeries res_sq;
  long calls = 0;
  for (int k = 0; k < N - 1; ++k) {
    const DenseVector& yk = trace.iterates.back();
    const DenseVector Tyk = T(yk);
    ++calls;
    res_sq.push(k, (yk - Tyk).squaredNorm());
    const double ratio = static_cast<double>(N - k - 1) / (N - k);
    DenseVector z_next =
        ratio * trace.zs.back() - 1.0 / (N - k) * (yk - Tyk);
    trace.iterates.push_back(DenseVector(Tyk - z_next));
    trace.zs.push_back(std::move(z_next));
  }
  trace.evals = calls;
  const DenseVector& last = trace.iterates.back();
  res_sq.push(N - 1, (last - T(last)).squaredNorm());
  ++calls;

  // Shadow run of the momentum form; the two routes are algebraically
  // identical, so any visible divergence indicates a broken update.
  {
    std::vector<DenseVector> ym;
    ym.push_back(y0);
    DenseVector T_prev = y0;
    for (int k = 0; k < N - 1; ++k) {
      const DenseVector Tyk = T(ym.back());
      ++calls;
      const double ratio = static_cast<double>(N - k - 1) / (N - k);
      ym.push_back(DenseVector(ym.back() + ratio * (Tyk - T_prev)));
      T_prev = Tyk;
    }
    double dev = 0.0;
    for (size_t i = 0; i < ym.size(); ++i) {
      dev = std::max(dev, (ym[i] - trace.iterates[i]).norm());
    }
    if (dev > 1e-10 * (1.0 + y0.norm())) {
      throw InternalConsistencyError(
          "run_dual_ohm: z-form and momentum form diverged by " +
          std::to_string(dev));
    }
  }
  trace.eval_calls_total = calls;
  trace.metrics["residual_sq"] = std::move(res_sq);
  return trace;
}

Trace run_proximal_form(ProximalKind kind, const MonotoneMap& A,
                        const DenseVector& y0, int N) {
  if (N < 1) throw ParameterError("run_proximal_form: N must be >= 1");
  if (!has_resolvent(A)) {
    throw UnsupportedOperatorError("run_proximal_form: no resolvent for '" +
                                   A.name + "'");
  }
  const bool appm = kind == ProximalKind::kAppm;
  const int steps = appm ? N : N - 1;
  Trace trace;
  trace.method = appm ? "appm" : "dual-ohm-prox";
  trace.horizon = N;
  trace.iterates.push_back(y0);
  trace.resolvent_points.push_back(y0);  // x_0 = y_0
  MetricSeries res_sq;
  long calls = 0;
  DenseVector y_prev = y0;  // y_{k-1}, with y_{-1} = y_0
  for (int k = 0; k < steps; ++k) {
    const DenseVector& yk = trace.iterates.back();
    const DenseVector& xk = trace.resolvent_points.back();
    DenseVector x_next = resolvent(A, yk, 1.0);
    ++calls;
    // |y_k - T y_k| = 2 |y_k - x_{k+1}|, no extra evaluation needed.
    res_sq.push(k, 4.0 * (yk - x_next).squaredNorm());
    DenseVector y_next;
    if (appm) {
      const double c = static_cast<double>(k) / (k + 2.0);
      y_next = x_next + c * (x_next - xk) - c * (xk - y_prev);
    } else {
      const double c = static_cast<double>(N - k - 1) / (N - k);
      y_next = x_next + c * (x_next - xk) - c * (xk - y_prev) -
               1.0 / (N - k) * (x_next - yk);
    }
    y_prev = yk;
    trace.resolvent_points.push_back(std::move(x_next));
    trace.iterates.push_back(std::move(y_next));
  }
  trace.evals = calls;
  if (!appm) {
    // Terminal residual via one measurement resolvent.
    const DenseVector& last = trace.iterates.back();
    DenseVector x_term = resolvent(A, last, 1.0);
    ++calls;
    res_sq.push(N - 1, 4.0 * (last - x_term).squaredNorm());
    trace.resolvent_points.push_back(std::move(x_term));
  }
  trace.eval_calls_total = calls;
  trace.metrics["residual_sq"] = std::move(res_sq);
  return trace;
}

Trace run_composed(const NonexpansiveMap& T, const DenseVector& y0, int N,
                   int Nprime) {
  if (!(2 <= Nprime && Nprime <= N - 1)) {
    throw ParameterError("run_composed: need 2 <= Nprime <= N-1");
  }
  Trace trace;
  trace.method = "composed";
  trace.horizon = N;
  trace.iterates.push_back(y0);
  MetricSeries res_sq;
  long calls = 0;
  DenseVector T_prev = y0;
  for (int k = 0; k <= N - 2; ++k) {
    const DenseVector& yk = trace.iterates.back();
    const DenseVector Tyk = T(yk);
    ++calls;
    res_sq.push(k, (yk - Tyk).squaredNorm());
    if (k <= Nprime - 2) {
      const double ratio = static_cast<double>(Nprime - k - 1) / (Nprime - k);
      trace.iterates.push_back(DenseVector(yk + ratio * (Tyk - T_prev)));
    } else {
      trace.iterates.push_back(
          DenseVector((k + 1.0) / (k + 2.0) * Tyk + 1.0 / (k + 2.0) * y0));
    }
    T_prev = Tyk;
  }
  trace.evals = calls;
  const DenseVector& last = trace.iterates.back();
  res_sq.push(N - 1, (last - T(last)).squaredNorm());
  ++calls;
  trace.eval_calls_total = calls;
  trace.metrics["residual_sq"] = std::move(res_sq);
  return trace;
}

LyapunovSeries lyapunov_series(LyapunovKind kind, const MonotoneMap& A,
                               const Trace& trace) {
  LyapunovSeries series;
  series.kind = kind;
  if (trace.iterates.empty()) {
    throw ParameterError("lyapunov_series: empty trace");
  }
  const DenseVector& y0 = trace.iterates.front();

  auto resolve = [&](const DenseVector& y) { return resolvent(A, y, 1.0); };

  if (kind == LyapunovKind::kUOhm) {
    if (trace.method.rfind("dual", 0) == 0) {
      throw ParameterError("lyapunov_series: U-series needs a primal trace");
    }
    series.values.push_back(0.0);  // U_0
    for (size_t k = 1; k < trace.iterates.size(); ++k) {
      const DenseVector xk = resolve(trace.iterates[k - 1]);
      const DenseVector gk = trace.iterates[k - 1] - xk;
      const double kk = static_cast<double>(k);
      series.values.push_back(kk * kk * gk.squaredNorm() +
                              kk * gk.dot(xk - y0));
    }
  } else if (kind == LyapunovKind::kVDualOhm) {
    if (trace.method != "dual-ohm") {
      throw ParameterError("lyapunov_series: V-series needs a dual-ohm trace");
    }
    const int N = trace.horizon;
    if (static_cast<int>(trace.zs.size()) != N ||
        static_cast<int>(trace.iterates.size()) != N) {
      throw ParameterError("lyapunov_series: trace missing z-sequence");
    }
    std::vector<DenseVector> x(N + 1), g(N + 1);
    for (int k = 1; k <= N; ++k) {
      x[k] = resolve(trace.iterates[k - 1]);
      g[k] = trace.iterates[k - 1] - x[k];
    }
    const DenseVector& y_last = trace.iterates[N - 1];
    for (int k = 0; k <= N - 1; ++k) {
      const DenseVector w = trace.zs[k] + 2.0 * g[N];
      const double a = static_cast<double>(N - k - 1) / (N - k);
      series.values.push_back(-a * w.squaredNorm() +
                              2.0 / (N - k) *
                                  w.dot(trace.iterates[k] - y_last));
    }
    for (int k = 0; k <= N - 2; ++k) {
      const double diff = series.values[k] - series.values[k + 1];
      const double closed = 4.0 / (static_cast<double>(N - k) * (N - k - 1)) *
                            (x[N] - x[k + 1]).dot(g[N] - g[k + 1]);
      series.max_identity_gap =
          std::max(series.max_identity_gap, std::abs(diff - closed));
    }
  } else {
    throw ParameterError(
        "lyapunov_series: kind handled elsewhere (minimax / ode)");
  }

  for (size_t k = 0; k + 1 < series.values.size(); ++k) {
    const double jump = series.values[k + 1] - series.values[k];
    if (jump > series.max_increase) series.max_increase = jump;
  }
  const double scale = 1.0 + y0.squaredNorm();
  series.nonincreasing = series.max_increase <= 1e-9 * scale;
  return series;
}

}  // namespace fpdual
