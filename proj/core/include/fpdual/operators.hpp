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

#ifndef FPDUAL_OPERATORS_HPP_
#define FPDUAL_OPERATORS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "fpdual/numerics.hpp"

namespace fpdual {

// A single-valued monotone operator A: R^d -> R^d, i.e. <Ax - Ax', x - x'> >= 0.
// Linear instances store A(x) = M x + c explicitly, which enables exact
// resolvents, zeros and the linear-operator identities. Analytic instances
// carry a callable and, optionally, a registered closed-form resolvent.
struct MonotoneMap {
  enum class Kind { kLinear, kAnalytic };

  int dim = 0;
  Kind kind = Kind::kLinear;
  DenseMatrix matrix;  // kLinear
  DenseVector offset;  // kLinear, default zero
  std::function<DenseVector(const DenseVector&)> fn;  // kAnalytic
  // Registered closed-form resolvent (y, gamma) -> x with x + gamma A x = y.
  std::function<DenseVector(const DenseVector&, double)> resolvent_fn;

  std::optional<double> lipschitz;
  double strong_mu = 0.0;
  std::optional<DenseVector> known_zero;
  std::string name;

  DenseVector operator()(const DenseVector& x) const;

  // Builds a linear monotone map; verifies the symmetric part of M is PSD
  // (min eigenvalue >= -1e-10 relative) and, when mu > 0, that it dominates
  // mu I. Throws ContractViolation otherwise.
  static MonotoneMap linear(DenseMatrix M, DenseVector c, double mu = 0.0,
                            std::string name = "linear");
  static MonotoneMap linear(DenseMatrix M, double mu = 0.0,
                            std::string name = "linear");
  static MonotoneMap zero(int dim);
};

// A nonexpansive (1-Lipschitz) map T: R^d -> R^d.
struct NonexpansiveMap {
  int dim = 0;
  std::function<DenseVector(const DenseVector&)> fn;
  std::optional<DenseVector> known_fix;
  std::string name;

  DenseVector operator()(const DenseVector& y) const { return fn(y); }
};

// A smooth convex-concave minimax problem, represented by its saddle
// operator x = (u, v) |-> (grad_u L, -grad_v L), which is monotone and
// L-Lipschitz. `op` has dimension n + m.
struct SaddleProblem {
  int n = 0;
  int m = 0;
  MonotoneMap op;
  double lipschitz = 0.0;
  double strong_mu = 0.0;
  std::optional<DenseVector> known_saddle;
  std::string name;

  int dim() const { return n + m; }
  DenseVector grad(const DenseVector& x) const { return op(x); }

  // Wraps a monotone map as a degenerate saddle problem (m = 0); the
  // algorithms only touch the operator, so this is how plain monotone
  // instances enter the gradient methods.
  static SaddleProblem from_monotone(MonotoneMap map);
};

// Resolvent x = (I + gamma A)^{-1} y. Exact dense solve for linear maps,
// registered closed form for analytic ones; UnsupportedOperatorError when
// neither is available.
DenseVector resolvent(const MonotoneMap& A, const DenseVector& y,
                      double gamma = 1.0);
bool has_resolvent(const MonotoneMap& A);

// T = 2 J_{gamma A} - I, the nonexpansive map matched to A. Fixed points of T
// are zeros of A.
NonexpansiveMap nonexpansive_from_monotone(const MonotoneMap& A,
                                           double gamma = 1.0);

// Yosida regularization A_delta = (1/delta)(I - J_{delta A}): single valued
// and (1/delta)-Lipschitz, same zeros as A.
MonotoneMap yosida(const MonotoneMap& A, double delta);

// ---- Benchmark problem generators ----

// L(u, v) = u v on R x R; saddle operator (v, -u); solution 0.
SaddleProblem make_bilinear_uv();

// L(u, v) = u^T M v; saddle operator (M v, -M^T u); solution 0.
SaddleProblem make_bilinear_matrix(const DenseMatrix& M);

// L(u, v) = u^2 v, convex-concave on [-1, 1] x R>=0. The generator records
// that domain in `name` and an effective smoothness constant for the region
// explored from the customary start (-1, 1); staying inside the domain is the
// caller's responsibility.
SaddleProblem make_u_squared_v();

// Worst-case bilinear construction: L(u,v) = (1/2) u^T G u - g^T u - <Au-b, v>
// with the 1/4-scaled anti-banded A, b = (1/4) * ones, g = (1/4) e_n and
// G = 2 A^T A; for mu > 0 the strongly-convex-strongly-concave variant with
// + mu/2 |u|^2 - mu/2 |v|^2. The solution is computed by solving the saddle
// linear system.
SaddleProblem make_ouyang_xu(int n, double mu = 0.0);

// Lagrangian of Huber-loss minimization under Au = b:
// L(u, v) = h_delta(u) + <Au - b, v>, with grad h_delta(u) = u for |u|<=delta
// and delta*u/|u| otherwise.
SaddleProblem make_huber_lagrangian(const DenseMatrix& A, const DenseVector& b,
                                    double delta);

// Random instance matching the customary experiment setup: A is m x n with
// i.i.d. N(0, 1/n^2) entries, the planted point has n/10 nonzero uniform
// coordinates, b = A * planted.
SaddleProblem make_huber_lagrangian_random(int n, int m, double delta,
                                           std::uint64_t seed);

// M = P^T P + S + mu I with Gaussian P and skew S (entries scaled by
// 1/sqrt(d)); homogeneous, so the zero vector is the solution.
MonotoneMap make_random_linear_monotone(int d, std::uint64_t seed,
                                        double mu = 0.0);

// Gradient of the Huber loss as a standalone monotone map with a registered
// closed-form resolvent; handy analytic test operator.
MonotoneMap make_huber_gradient(int dim, double delta);

}  // namespace fpdual

#endif  // FPDUAL_OPERATORS_HPP_
