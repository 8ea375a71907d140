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

#ifndef FPDUAL_HDUALITY_HPP_
#define FPDUAL_HDUALITY_HPP_

#include <cstdint>
#include <vector>

#include "fpdual/hmatrix.hpp"
#include "fpdual/numerics.hpp"

namespace fpdual {

// Positive proof weights u_1..u_{N-1} (or their duals v); weights(k-1) = u_k.
struct ProofWeights {
  DenseVector weights;

  int count() const { return static_cast<int>(weights.size()); }
  double at(int j) const { return weights(j - 1); }  // 1-based
};

// v_j = 1 / u_{N-j}; an exact involution.
ProofWeights dualize_weights(const ProofWeights& u);

// Symmetric coefficient matrix S of a vector quadratic form over
// (g_1, .., g_N): the form value is sum_{i,j} S_{i,j} <g_i, g_j>.
struct QuadForm {
  DenseMatrix S;

  double min_eigenvalue() const { return min_eigen_sym(S); }
};

// Forward Lyapunov structure of the iteration driven by H: the quadratic
// form of
//   U_N - tau |g_N|^2 - <g_N, x_N - y_0>,
// with U_N accumulated as U_{j+1} = U_j - u_j <x_{j+1}-x_j, g_{j+1}-g_j> from
// U_1 = 0, and x/y driven by H. The iteration guarantee
// |y_{N-1} - T y_{N-1}|^2 <= 4 |y_0 - y*|^2 / tau^2 follows when this form is
// PSD. Coefficients are recovered by scalar probing of the defining
// expression (indicator and paired-indicator inputs), never by transcribing
// an expanded formula.
QuadForm s_form(const HMatrix& H, const ProofWeights& u, double tau);

// Backward (dual) Lyapunov structure for the iteration driven by HA:
// the quadratic form of
//   -V_0 - tau |g_N|^2 - <g_N, x_N - y_0>,
// with V_0 telescoped from V_{N-1} = 0 through
// V_j = V_{j+1} + v_{j+1} <x_N - x_{j+1}, g_N - g_{j+1}>.
QuadForm t_form(const HMatrix& HA, const ProofWeights& v, double tau);

// The correspondence g' = F(g) under which the forward form of (H, u) and
// the backward form of (H^A, 1/u reversed) take equal values:
//   F(g)_k = u_{N-k} (g_{N-k+1} - g_{N-k}) + g_N for k < N, F(g)_N = g_N.
std::vector<DenseVector> f_map(const ProofWeights& u,
                               const std::vector<DenseVector>& g);
std::vector<DenseVector> f_inverse(const ProofWeights& u,
                                   const std::vector<DenseVector>& g);

struct DualityReport {
  // max over sampled g of |S(g) - T(F(g))| with T built from H^A and the
  // dualized weights.
  double max_discrepancy = 0.0;
  double min_eig_s = 0.0;
  double min_eig_t = 0.0;
  // Signs agree up to a +-1e-8 dead band around zero.
  bool sign_agreement = false;
};

// Numerical check of the duality correspondence for (H, u, tau) over `trials`
// random g draws, plus the PSD comparison of the two coefficient matrices.
DualityReport verify_duality(const HMatrix& H, const ProofWeights& u,
                             double tau, int trials, std::uint64_t seed = 7);

// Weights that certify the named methods at tau = N: u_j = j(j+1)/N for OHM
// (forward structure), v_j = N/((N-j)(N-j+1)) for Dual-OHM (backward
// structure). They are duals of each other.
ProofWeights ohm_weights(int N);
ProofWeights dual_ohm_weights(int N);

}  // namespace fpdual

#endif  // FPDUAL_HDUALITY_HPP_
