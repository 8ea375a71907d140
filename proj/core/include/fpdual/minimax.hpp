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

#ifndef FPDUAL_MINIMAX_HPP_
#define FPDUAL_MINIMAX_HPP_

#include "fpdual/operators.hpp"
#include "fpdual/trace.hpp"

namespace fpdual {

enum class MinimaxMethod { kEg, kFeg, kDualFeg };

struct MinimaxOptions {
  // Keep half-index iterates and the z-sequence; required for the Dual-FEG
  // Lyapunov analysis, off by default to bound memory on long runs.
  bool keep_half = false;
};

// Runs EG / FEG / Dual-FEG on the saddle operator of P for N steps with step
// size alpha. Exactly two gradient evaluations per step; grad_norm_sq is
// recorded at every integer iterate (terminal one via a measurement
// evaluation). When alpha > 1/L the run is flagged, not rejected.
//
//   EG:       x_{k+1/2} = x_k - alpha A x_k
//             x_{k+1}   = x_k - alpha A x_{k+1/2}
//   FEG:      x_{k+1/2} = x_k + (x_0 - x_k)/(k+1) - k/(k+1) alpha A x_k
//             x_{k+1}   = x_k + (x_0 - x_k)/(k+1) - alpha A x_{k+1/2}
//   Dual-FEG: x_{k+1/2} = x_k - alpha z_k - alpha A x_k
//             x_{k+1}   = x_{k+1/2} - (N-k-1)/(N-k) alpha (A x_{k+1/2} - A x_k)
//             z_{k+1}   = (N-k-1)/(N-k) z_k - 1/(N-k) A x_{k+1/2},   z_0 = 0.
// Dual-FEG requires its horizon N up front; at the last step the
// extragradient correction vanishes by schedule, so x_N = x_{N-1/2}.
Trace run_minimax(MinimaxMethod method, const SaddleProblem& P,
                  const DenseVector& x0, double alpha, int N,
                  const MinimaxOptions& options = {});

// Dual-FEG Lyapunov sequence
//   V_k = -alpha |z_k + g_N|^2 + 2/(N-k) <z_k + g_N, x_k - x_N>,  g_N = A x_N,
// over k = 0..N-1, with each step difference decomposed into its
// monotonicity term MI_k = <A x_N - A x_{k+1/2}, x_N - x_{k+1/2}> and
// Lipschitz term LI_k = |x_{k+1/2}-x_k|^2 - alpha^2 |A x_{k+1/2} - A x_k|^2.
// The trace must come from run_minimax(kDualFeg, ..., keep_half = true).
LyapunovSeries dual_feg_lyapunov(const SaddleProblem& P, const Trace& trace,
                                 double alpha);

// Runs FEG and Dual-FEG and returns |x_N(FEG) - x_N(DualFEG)| / (1 + |x0|).
// Only defined for linear saddle operators, where the two terminal iterates
// coincide exactly; ParameterError otherwise.
double terminal_match_linear(const SaddleProblem& P, const DenseVector& x0,
                             double alpha, int N);

// Default step size 1/L from the problem's Lipschitz constant.
double default_alpha(const SaddleProblem& P);

}  // namespace fpdual

#endif  // FPDUAL_MINIMAX_HPP_
