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

#ifndef FPDUAL_ODE_HPP_
#define FPDUAL_ODE_HPP_

#include <map>
#include <string>
#include <vector>

#include "fpdual/numerics.hpp"
#include "fpdual/operators.hpp"

namespace fpdual {

// Continuous-time trajectory on a uniform grid. For the dual-anchor flow the
// grid stops at t_end = T - delta_trunc (the vanishing 1/(T-t) window);
// `trunc_error_bound` bounds |X(T) - X(t_end)| through the velocity envelope
// |X'(t)| <= (T-t)/T |A X_0|, giving delta^2 |A X_0| / (2T).
struct OdeTrajectory {
  enum class Model { kAnchor, kDualAnchor, kDualAnchorYosida };

  Model model = Model::kAnchor;
  double T = 0.0;
  double t_end = 0.0;
  double delta_trunc = 0.0;
  double trunc_error_bound = 0.0;

  std::vector<double> times;
  std::vector<DenseVector> states;  // X(t_i)
  std::vector<DenseVector> zs;      // Z(t_i), dual-anchor models
  std::vector<DenseVector> xdots;   // X'(t_i) from the ODE right side

  std::map<std::string, std::vector<double>> monitors;

  const DenseVector& terminal() const { return states.back(); }
};

// Anchor flow X' = -A(X) + (X_0 - X)/t, X(0) = X_0, integrated by classical
// RK4 on a uniform grid over [0, T]. The t = 0 slope is the limit value
// -A(X_0)/2; the first few intervals are sub-stepped to keep the 1/t
// coefficient from degrading the fourth-order behavior.
OdeTrajectory integrate_anchor(const MonotoneMap& A, const DenseVector& X0,
                               double T, int steps);

// Dual-anchor flow X' = -Z - A(X), Z' = -(Z + A(X))/(T-t), X(0) = X_0,
// Z(0) = 0, integrated on [0, T - delta] with delta = max(T*1e-6, grid step).
// The reported terminal state is X(T - delta); the truncation error bound is
// stored in the trajectory. Intervals near the terminal time are sub-stepped.
OdeTrajectory integrate_dual_anchor(const MonotoneMap& A,
                                    const DenseVector& X0, double T,
                                    int steps);

// Dual-anchor flow driven by the Yosida regularization A_delta in place of A;
// A must have a resolvent.
OdeTrajectory integrate_dual_anchor_yosida(const MonotoneMap& A, double delta,
                                           const DenseVector& X0, double T,
                                           int steps);

// Closed-form anchor solution for invertible linear A:
//   X(t) = (1/t) A^{-1} (I - e^{-tA}) X_0,
// the oracle the integrator is validated against.
DenseVector anchor_closed_form(const DenseMatrix& Amat, const DenseVector& X0,
                               double t);

struct MonitorReport {
  int v_violations = 0;
  int psi_violations = 0;
  double v_terminal = 0.0;  // V at the last grid node; tends to 0
  double v_initial = 0.0;
  double max_psi = 0.0;
};

// Computes V(t) = -|Z + A(X_end)|^2 + 2/(T-t) <Z + A(X_end), X(t) - X_end>
// and Psi(t) = |X'(t)|^2/(T-t)^2 along a dual-anchor trajectory, stores them
// in traj.monitors and reports monotonicity violations (jumps above
// 1e-7 * scale). `driver` must be the operator that drove the integration
// (the regularized one for Yosida runs).
MonitorReport attach_monitors(OdeTrajectory& traj, const MonotoneMap& driver);

// Largest violation of the strong-monotonicity velocity envelope
// |X'(t)| <= e^{-mu t} |A(X_0)| along the trajectory (positive value =
// violation, negative = slack).
double strong_decay_violation(const OdeTrajectory& traj, double mu,
                              double a_x0_norm);

// Checks the anti-diagonal reflection of the anchor kernel against the
// closed-form dual-anchor kernel on a sample grid (smooth parts only, the
// s = t Dirac line excluded). Returns the maximum discrepancy, which is an
// algebraic zero.
double hkernel_check(double T, int samples);

}  // namespace fpdual

#endif  // FPDUAL_ODE_HPP_
