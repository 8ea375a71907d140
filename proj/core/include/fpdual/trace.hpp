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

#ifndef FPDUAL_TRACE_HPP_
#define FPDUAL_TRACE_HPP_

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "fpdual/numerics.hpp"

namespace fpdual {

// A metric sampled at explicit iteration indices (integer iterates only;
// half-index iterates live in their own Trace sequence).
struct MetricSeries {
  std::vector<int> iters;
  std::vector<double> values;

  void push(int iter, double value) {
    iters.push_back(iter);
    values.push_back(value);
  }
};

// Per-run record of iterates and metrics.
//
// `evals` is the operator-evaluation budget consumed by the algorithm itself
// (one T or resolvent per outer step for fixed-point methods, two gradients
// per step for extragradient-type methods). Measuring the metric at the
// terminal iterate costs one extra evaluation which is bookkept in
// `eval_calls_total`, not in `evals`.
struct Trace {
  std::string method;
  int horizon = 0;  // N

  std::vector<DenseVector> iterates;          // y_k or x_k (integer index)
  std::vector<DenseVector> half_iterates;     // x_{k+1/2}, when retained
  std::vector<DenseVector> resolvent_points;  // x_k = J_A(y_{k-1})
  std::vector<DenseVector> zs;                // z_k

  std::map<std::string, MetricSeries> metrics;

  long evals = 0;
  long eval_calls_total = 0;
  // Set when alpha > 1/L so the run has no worst-case guarantee.
  bool guarantee_flagged = false;
  // Which residual convention produced the run ("y - Ty" is canonical).
  std::string convention = "y - Ty";
};

enum class LyapunovKind { kUOhm, kVDualOhm, kVDualFeg, kVContinuous };

// Discrete Lyapunov sequence along a trace, plus the per-step diagnostics the
// convergence proofs rely on.
struct LyapunovSeries {
  LyapunovKind kind;
  std::vector<double> values;

  bool nonincreasing = true;
  double max_increase = 0.0;  // worst positive jump, 0 when monotone

  // kVDualOhm: gap between consecutive differences and the closed-form
  // telescoping identity they must equal.
  double max_identity_gap = 0.0;

  // kVDualFeg: per-step monotonicity and Lipschitz terms of the difference
  // decomposition (both must be nonnegative when alpha <= 1/L).
  std::vector<double> mi;
  std::vector<double> li;
};

// Writes "iter,metric,value" rows for every metric series in the trace.
// Doubles are rendered with shortest round-trip formatting so identical runs
// produce byte-identical files.
void write_trace_csv(const Trace& trace, std::ostream& out);

// Shortest round-trip decimal rendering of a double (std::to_chars).
std::string format_double(double v);

}  // namespace fpdual

#endif  // FPDUAL_TRACE_HPP_
