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

#ifndef FPDUAL_FIXEDPOINT_HPP_
#define FPDUAL_FIXEDPOINT_HPP_

#include "fpdual/operators.hpp"
#include "fpdual/trace.hpp"

namespace fpdual {

// The optimal Halpern method (OHM):
//   y_{k+1} = (k+1)/(k+2) T y_k + 1/(k+2) y_0,   k = 0..N-1.
// One T evaluation per step; residual_sq recorded at every iterate
// (the terminal one via a measurement evaluation).
Trace run_ohm(const NonexpansiveMap& T, const DenseVector& y0, int N);

// OHM in momentum form,
//   y_{k+1} = y_k - 1/(k+2) (y_k - T y_k) + k/(k+2) (T y_k - T y_{k-1}),
// with T y_{-1} = y_0. Algebraically identical to run_ohm; kept as an
// independent route for the form-equivalence checks.
Trace run_ohm_momentum(const NonexpansiveMap& T, const DenseVector& y0, int N);

// Dual-OHM with horizon N fixed in advance (z-form):
//   z_{k+1} = (N-k-1)/(N-k) z_k - 1/(N-k) (y_k - T y_k),  z_0 = 0,
//   y_{k+1} = T y_k - z_{k+1},                            k = 0..N-2.
// The momentum form y_{k+1} = y_k + (N-k-1)/(N-k)(T y_k - T y_{k-1}) is run
// alongside and must agree to rounding; disagreement beyond 1e-10*(1+|y0|)
// raises InternalConsistencyError.
Trace run_dual_ohm(const NonexpansiveMap& T, const DenseVector& y0, int N);

enum class ProximalKind { kAppm, kDualOhmProx };

// Resolvent forms of the two methods above, driven by the monotone operator
// directly:
//   APPM:          x_{k+1} = J_A y_k,
//                  y_{k+1} = x_{k+1} + k/(k+2)(x_{k+1}-x_k) - k/(k+2)(x_k-y_{k-1})
//   Dual-OHM prox: y_{k+1} = x_{k+1} + (N-k-1)/(N-k)(x_{k+1}-x_k)
//                          - (N-k-1)/(N-k)(x_k-y_{k-1}) - 1/(N-k)(x_{k+1}-y_k)
// with x_0 = y_{-1} = y_0. Residuals come free from the resolvent points
// (|y_k - T y_k| = 2|y_k - x_{k+1}|), so no measurement evaluation is needed.
Trace run_proximal_form(ProximalKind kind, const MonotoneMap& A,
                        const DenseVector& y0, int N);

// Composed schedule: Nprime steps of Dual-OHM (horizon Nprime), then the OHM
// anchor update up to y_{N-1}. Requires 2 <= Nprime <= N-1.
Trace run_composed(const NonexpansiveMap& T, const DenseVector& y0, int N,
                   int Nprime);

// Discrete Lyapunov sequence along a trace. For kUOhm the trace must come
// from an OHM-family run (iterates y_0..), for kVDualOhm from run_dual_ohm
// (needs the recorded z_k). Resolvent points are recomputed through A at
// unit scale. kVDualOhm also checks each consecutive difference against its
// closed-form value 4/((N-k)(N-k-1)) <x_N - x_{k+1}, Ax_N - Ax_{k+1}>.
LyapunovSeries lyapunov_series(LyapunovKind kind, const MonotoneMap& A,
                               const Trace& trace);

}  // namespace fpdual

#endif  // FPDUAL_FIXEDPOINT_HPP_
