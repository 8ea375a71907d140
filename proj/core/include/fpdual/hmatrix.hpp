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

#ifndef FPDUAL_HMATRIX_HPP_
#define FPDUAL_HMATRIX_HPP_

#include <iosfwd>
#include <string>

#include "fpdual/numerics.hpp"
#include "fpdual/operators.hpp"
#include "fpdual/trace.hpp"

namespace fpdual {

// Lower-triangular step-size matrix fully specifying a fixed-step first-order
// method.
//
// Two iteration conventions are tagged by `scale`:
//  - kFixedPoint: an (N-1)x(N-1) matrix driving
//        y_{k+1} = y_k - sum_{j<=k} h_{k+1,j+1} (y_j - T y_j),
//  - kGradient: a 2Nx2N matrix over half-index iterates driving
//        x_{(l+1)/2} = x_{l/2} - (1/L) sum_{i<=l} h_{(l+1)/2,i/2} A x_{i/2},
//    whose entries carry the alpha*L product baked in.
struct HMatrix {
  enum class Scale { kFixedPoint, kGradient };

  int n = 0;
  Scale scale = Scale::kFixedPoint;
  double alpha_l = 0.0;  // kGradient only
  DenseMatrix entries;   // n x n, strictly upper part identically zero

  // 1-based access matching the customary index convention.
  double operator()(int k, int j) const { return entries(k - 1, j - 1); }
};

// Reflection along the anti-diagonal: (H^A)_{k,j} = H_{n+1-j, n+1-k}.
// Preserves lower-triangularity; exact involution (bitwise).
HMatrix anti_transpose(const HMatrix& H);

enum class FixedPointMethod { kOhm, kDualOhm };
enum class GradientMethod { kFeg, kDualFeg };

// Exact rational value, used for the closed-form entries of named matrices.
struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / den; }
  std::string str() const;
};

// Closed-form entry of the named fixed-point matrices (1-based k >= j):
//   OHM:      -j / (k (k+1)) below the diagonal,        k/(k+1) on it.
//   Dual-OHM: -(N-k) / ((N-j)(N-j+1)) below the diagonal, (N-k)/(N-k+1) on it.
Rational named_hmatrix_entry(FixedPointMethod method, int N, int k, int j);

// The (N-1)x(N-1) matrix of a named fixed-point method. N >= 2.
HMatrix named_hmatrix(FixedPointMethod method, int N);

// The 2Nx2N half-index matrix of FEG / Dual-FEG with step product
// alpha_l = alpha * L in (0, 1]. N >= 1.
HMatrix named_gradient_hmatrix(GradientMethod method, int N, double alpha_l);

// Matrix of the composed schedule that runs Nprime steps of Dual-OHM and then
// switches to the OHM anchor update; 2 <= Nprime <= N-1.
HMatrix composed_hmatrix(int N, int Nprime);

// Runs the fixed-point iteration driven by H for its full horizon. Each
// residual y_j - T y_j is evaluated once and cached. Records residual_sq.
Trace run_fp_hmatrix(const HMatrix& H, const NonexpansiveMap& T,
                     const DenseVector& y0);

// Runs the half-index gradient iteration driven by a kGradient matrix.
// Gradients are evaluated once per half-index position. Records grad_norm_sq
// at integer positions.
Trace run_grad_hmatrix(const HMatrix& H, const SaddleProblem& P,
                       const DenseVector& x0, double L);

// CSV round trip: a header row "n,scale,alpha_l" followed by the lower
// triangle, one row per line.
void write_hmatrix_csv(const HMatrix& H, std::ostream& out);
HMatrix read_hmatrix_csv(std::istream& in);

// Structured JSON dump; named matrices get exact rational entry strings.
std::string hmatrix_json_dump(const HMatrix& H);
std::string named_hmatrix_json_dump(FixedPointMethod method, int N);

}  // namespace fpdual

#endif  // FPDUAL_HMATRIX_HPP_
