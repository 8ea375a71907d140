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

#include "fpdual/ode.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "fpdual/errors.hpp"

namespace fpdual {

namespace {

using Rhs = std::function<DenseVector(double, const DenseVector&)>;

DenseVector rk4_step(const Rhs& f, double t, const DenseVector& s, double h) {
  const DenseVector k1 = f(t, s);
  const DenseVector k2 = f(t + 0.5 * h, s + 0.5 * h * k1);
  const DenseVector k3 = f(t + 0.5 * h, s + 0.5 * h * k2);
  const DenseVector k4 = f(t + h, s + h * k3);
  return s + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Sub-step count for the interval at `dist` intervals away from a singular
// endpoint of the time-varying coefficient.
int graded_substeps(int dist) {
  switch (dist) {
    case 0: return 32;
    case 1: return 8;
    case 2: return 4;
    case 3: return 2;
    default: return 1;
  }
}

DenseVector integrate_interval(const Rhs& f, double t0, DenseVector s,
                               double h, int substeps) {
  const double hs = h / substeps;
  for (int i = 0; i < substeps; ++i) {
    s = rk4_step(f, t0 + i * hs, s, hs);
  }
  return s;
}

}  // namespace

OdeTrajectory integrate_anchor(const MonotoneMap& A, const DenseVector& X0,
                               double T, int steps) {
  if (T <= 0.0) throw ParameterError("integrate_anchor: T must be positive");
  if (steps < 10) throw ParameterError("integrate_anchor: steps must be >= 10");
  if (X0.size() != A.dim) throw ParameterError("integrate_anchor: dim mismatch");
  const double h = T / steps;
  // RK4 runs on the scaled state W(t) = t (X(t) - X_0). Its flow
  // W' = -t A(X_0 + W/t) has bounded derivatives through t = 0 (where the
  // raw 1/t anchor coefficient would cost the integrator an order), and the
  // node states are recovered as X = X_0 + W/t.
  const Rhs f = [&A, &X0](double t, const DenseVector& W) {
    if (t <= 0.0) return DenseVector(DenseVector::Zero(W.size()));
    return DenseVector(-t * A(X0 + W / t));
  };
  OdeTrajectory traj;
  traj.model = OdeTrajectory::Model::kAnchor;
  traj.T = T;
  traj.t_end = T;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  DenseVector W = DenseVector::Zero(X0.size());
  for (int i = 0; i <= steps; ++i) {
    const double t = i * h;
    const DenseVector X = i == 0 ? X0 : DenseVector(X0 + W / t);
    traj.times.push_back(t);
    traj.states.push_back(X);
    // X'(t) from the defining flow; the t = 0 value is the limit slope.
    traj.xdots.push_back(i == 0 ? DenseVector(-0.5 * A(X))
                                : DenseVector(-A(X) + (X0 - X) / t));
    traj.monitors["op_norm_sq"].push_back(A(X).squaredNorm());
    if (i < steps) W = rk4_step(f, t, W, h);
  }
  return traj;
}

namespace {

OdeTrajectory run_dual_anchor(const MonotoneMap& driver, const DenseVector& X0,
                              double T, int steps,
                              OdeTrajectory::Model model) {
  if (T <= 0.0) throw ParameterError("integrate_dual_anchor: T must be positive");
  if (steps < 10) {
    throw ParameterError("integrate_dual_anchor: steps must be >= 10");
  }
  if (X0.size() != driver.dim) {
    throw ParameterError("integrate_dual_anchor: dim mismatch");
  }
  const double delta = std::max(T * 1e-6, T / steps);
  const double t_end = T - delta;
  const double h = t_end / steps;
  const auto d = X0.size();
  // State is (X; Z) stacked.
  const Rhs f = [&driver, T, d](double t, const DenseVector& s) {
    const DenseVector X = s.head(d);
    const DenseVector Z = s.tail(d);
    const DenseVector AX = driver(X);
    DenseVector out(2 * d);
    out.head(d) = -Z - AX;
    out.tail(d) = -(Z + AX) / (T - t);
    return out;
  };
  OdeTrajectory traj;
  traj.model = model;
  traj.T = T;
  traj.t_end = t_end;
  traj.delta_trunc = delta;
  traj.trunc_error_bound = delta * delta * driver(X0).norm() / (2.0 * T);
  DenseVector s(2 * d);
  s.head(d) = X0;
  s.tail(d).setZero();
  for (int i = 0; i <= steps; ++i) {
    const double t = i * h;
    traj.times.push_back(t);
    traj.states.push_back(s.head(d));
    traj.zs.push_back(s.tail(d));
    traj.xdots.push_back(f(t, s).head(d));
    traj.monitors["op_norm_sq"].push_back(driver(s.head(d)).squaredNorm());
    if (i < steps) {
      s = integrate_interval(f, t, s, h, graded_substeps(steps - 1 - i));
    }
  }
  return traj;
}

}  // namespace

OdeTrajectory integrate_dual_anchor(const MonotoneMap& A,
                                    const DenseVector& X0, double T,
                                    int steps) {
  return run_dual_anchor(A, X0, T, steps, OdeTrajectory::Model::kDualAnchor);
}

OdeTrajectory integrate_dual_anchor_yosida(const MonotoneMap& A, double delta,
                                           const DenseVector& X0, double T,
                                           int steps) {
  if (!has_resolvent(A)) {
    throw UnsupportedOperatorError(
        "integrate_dual_anchor_yosida: no resolvent");
  }
  const MonotoneMap regularized = yosida(A, delta);
  return run_dual_anchor(regularized, X0, T, steps,
                         OdeTrajectory::Model::kDualAnchorYosida);
}

DenseVector anchor_closed_form(const DenseMatrix& Amat, const DenseVector& X0,
                               double t) {
  if (t <= 0.0) throw ParameterError("anchor_closed_form: t must be positive");
  Eigen::FullPivLU<DenseMatrix> lu(Amat);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    throw ParameterError("anchor_closed_form: matrix not invertible");
  }
  const DenseVector w = (DenseMatrix::Identity(Amat.rows(), Amat.cols()) -
                         expm(Amat, -t)) *
                        X0;
  return lu.solve(w) / t;
}

MonitorReport attach_monitors(OdeTrajectory& traj, const MonotoneMap& driver) {
  if (traj.model == OdeTrajectory::Model::kAnchor) {
    throw ParameterError("attach_monitors: dual-anchor trajectory required");
  }
  const int n = static_cast<int>(traj.times.size());
  const DenseVector gT = driver(traj.states.back());
  std::vector<double> V(n), Psi(n);
  for (int i = 0; i < n; ++i) {
    const DenseVector w = traj.zs[i] + gT;
    const double rem = traj.T - traj.times[i];
    V[i] = -w.squaredNorm() +
           2.0 / rem * w.dot(traj.states[i] - traj.states.back());
    Psi[i] = traj.xdots[i].squaredNorm() / (rem * rem);
  }
  MonitorReport report;
  report.v_initial = V.front();
  report.v_terminal = V.back();
  report.max_psi = *std::max_element(Psi.begin(), Psi.end());
  double v_scale = 1.0, psi_scale = 1.0;
  for (int i = 0; i < n; ++i) {
    v_scale = std::max(v_scale, std::abs(V[i]));
    psi_scale = std::max(psi_scale, std::abs(Psi[i]));
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (V[i + 1] > V[i] + 1e-7 * v_scale) ++report.v_violations;
    if (Psi[i + 1] > Psi[i] + 1e-7 * psi_scale) ++report.psi_violations;
  }
  traj.monitors["V"] = std::move(V);
  traj.monitors["Psi"] = std::move(Psi);
  return report;
}

double strong_decay_violation(const OdeTrajectory& traj, double mu,
                              double a_x0_norm) {
  double worst = -1e300;
  for (size_t i = 0; i < traj.times.size(); ++i) {
    const double bound = std::exp(-mu * traj.times[i]) * a_x0_norm;
    worst = std::max(worst, traj.xdots[i].norm() - bound);
  }
  return worst;
}

double hkernel_check(double T, int samples) {
  if (samples < 10) throw ParameterError("hkernel_check: samples must be >= 10");
  if (T <= 0.0) throw ParameterError("hkernel_check: T must be positive");
  // Smooth part of the anchor kernel, arguments (t, s): -s/t^2.
  const auto anchor_kernel = [](double t, double s) { return -s / (t * t); };
  double worst = 0.0;
  for (int i = 1; i <= samples; ++i) {
    const double t = T * i / (samples + 1);
    for (int j = 1; j < i; ++j) {
      const double s = T * j / (samples + 1);
      const double reflected = anchor_kernel(T - s, T - t);
      const double dual = -(T - t) / ((T - s) * (T - s));
      worst = std::max(worst, std::abs(reflected - dual));
    }
  }
  return worst;
}

}  // namespace fpdual
