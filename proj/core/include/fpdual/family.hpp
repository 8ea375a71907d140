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

#ifndef FPDUAL_FAMILY_HPP_
#define FPDUAL_FAMILY_HPP_

#include "fpdual/hmatrix.hpp"
#include "fpdual/numerics.hpp"

namespace fpdual {

// Family parameter: the diagonal products p_k = prod_{l=k..N-1} h_{l,l} of a
// candidate step-size matrix, k = 1..N-1. The family of exact optimal
// methods is parametrized by (p_2, .., p_{N-1}) subject to
//   p_1 = 1/N                               (always, exactly),
//   p_k >= 1/(N-k+1)                        (k = 2..N-1),
//   p_k >= (N-k)/(N-k-1) p_{k+1} - 1/(N-k-1)  (k = 1..N-2);
// strict inequalities select the interior, where all certificate multipliers
// are strictly positive. OHM and Dual-OHM sit on the boundary.
struct PVector {
  int N = 0;
  DenseVector p;  // p(k-1) stores p_k, k = 1..N-1

  double at(int k) const { return p(k - 1); }  // 1-based
};

enum class PVectorKind { kOhm, kDualOhm };

// Boundary parameter points: p_k = k/N for OHM and p_k = 1/(N-k+1) for
// Dual-OHM. N >= 2.
PVector named_pvector(PVectorKind kind, int N);

// Segment between the two boundary points: gamma * OHM + (1-gamma) * DualOHM,
// strictly interior for gamma in (0, 1). N >= 3.
PVector interpolate_pvector(double gamma, int N);

// Strict interior membership test.
bool is_interior(const PVector& pv);

// Diagonal products of an existing fixed-point matrix.
PVector pvector_from_hmatrix(const HMatrix& H);

// Certificate data for a candidate (H, p) pair.
//
// The multipliers lambda and the column-sum values q are the closed-form
// functions of p that make the defining identity
//   0 = <g_N, x_N - y_0> + N |g_N|^2
//       + sum_k lambda_{k+1,k} <g_{k+1}-g_k, x_{k+1}-x_k>
//       + sum_k lambda_{N,k}   <g_N  -g_k, x_N  -x_k>
// hold for every g when the matrix belongs to the family. `max_residual` is
// the largest coefficient of that identity's quadratic form computed from
// the closed-form coefficient expressions; `max_residual_probe` recomputes
// the same coefficients by scalar probing of the defining expression, an
// independent route that catches transcription mistakes. `psd_margin` is the
// smallest eigenvalue of the probed coefficient matrix (which must vanish).
struct FamilyCertificate {
  int N = 0;
  DenseVector lambda_chain;  // lambda_{k+1,k}, k = 1..N-2 (empty for N = 2)
  DenseVector lambda_to_n;   // lambda_{N,k},   k = 1..N-1
  DenseVector q;             // q_k = 1 - (N-k) p_{k+1} + (N-k+1) p_k, k=1..N-1
  double telescoping_gap = 0.0;  // |sum_k lambda_{N,k} - (N-1)|
  bool lambdas_nonneg = false;
  double min_lambda = 0.0;

  double max_residual = 0.0;
  double max_residual_probe = 0.0;
  double identity_residual_random = 0.0;  // |identity(g)| on random g draws
  double psd_margin = 0.0;

  bool pass(double tol = 1e-9) const {
    return max_residual <= tol && max_residual_probe <= tol;
  }
};

// Multipliers and column sums for a parameter point (identity coefficients
// are not evaluated; see certify). Requires p_1 = 1/N within 1e-12.
FamilyCertificate lambdas_and_q(const PVector& pv);

// Builds the family member for parameter p: diagonals h_{k,k} = p_k/p_{k+1}
// (p_N = 1), off-diagonal columns solved from the certificate linear systems,
// column N-2 down to 1. The column systems stay invertible on the segment
// endpoints (OHM / Dual-OHM); elsewhere on the boundary a singular system
// raises SynthesisFailure with the failing column.
HMatrix synthesize(const PVector& pv);

// Evaluates every coefficient of the defining identity for (H, p), through
// both the closed-form expressions and scalar probing, and reports the
// certificate. Never throws on a failing certificate; callers inspect it.
FamilyCertificate certify(const HMatrix& H, const PVector& pv);

}  // namespace fpdual

#endif  // FPDUAL_FAMILY_HPP_
