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

#include "fpdual/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "fpdual/errors.hpp"
#include "fpdual/rng.hpp"

namespace fpdual {

DenseVector MonotoneMap::operator()(const DenseVector& x) const {
  if (x.size() != dim) throw ParameterError("MonotoneMap: dimension mismatch");
  if (kind == Kind::kLinear) {
    return offset.size() > 0 ? DenseVector(matrix * x + offset)
                             : DenseVector(matrix * x);
  }
  return fn(x);
}

MonotoneMap MonotoneMap::linear(DenseMatrix M, DenseVector c, double mu,
                                std::string name) {
  const int d = static_cast<int>(M.rows());
  if (M.cols() != d) throw ParameterError("MonotoneMap::linear: non-square");
  if (c.size() != 0 && c.size() != d) {
    throw ParameterError("MonotoneMap::linear: offset dimension mismatch");
  }
  const DenseMatrix sym = 0.5 * (M + M.transpose());
  const double scale = 1.0 + M.cwiseAbs().maxCoeff();
  if (min_eigen_sym(sym) < -1e-10 * scale) {
    throw ContractViolation("MonotoneMap::linear: symmetric part not PSD");
  }
  if (mu > 0.0 &&
      min_eigen_sym(DenseMatrix(sym - mu * DenseMatrix::Identity(d, d))) <
          -1e-8 * scale) {
    throw ContractViolation(
        "MonotoneMap::linear: symmetric part does not dominate mu I");
  }
  MonotoneMap map;
  map.dim = d;
  map.kind = Kind::kLinear;
  map.matrix = std::move(M);
  map.offset = std::move(c);
  map.lipschitz = operator_norm(map.matrix);
  map.strong_mu = mu;
  map.name = std::move(name);
  return map;
}

MonotoneMap MonotoneMap::linear(DenseMatrix M, double mu, std::string name) {
  return linear(std::move(M), DenseVector(), mu, std::move(name));
}

MonotoneMap MonotoneMap::zero(int dim) {
  MonotoneMap map = linear(DenseMatrix::Zero(dim, dim), 0.0, "zero");
  map.known_zero = DenseVector::Zero(dim);
  return map;
}

SaddleProblem SaddleProblem::from_monotone(MonotoneMap map) {
  SaddleProblem p;
  p.n = map.dim;
  p.m = 0;
  p.lipschitz = map.lipschitz.value_or(0.0);
  p.strong_mu = map.strong_mu;
  p.known_saddle = map.known_zero;
  p.name = map.name;
  p.op = std::move(map);
  return p;
}

bool has_resolvent(const MonotoneMap& A) {
  return A.kind == MonotoneMap::Kind::kLinear ||
         static_cast<bool>(A.resolvent_fn);
}

DenseVector resolvent(const MonotoneMap& A, const DenseVector& y,
                      double gamma) {
  if (gamma <= 0.0) throw ParameterError("resolvent: gamma must be positive");
  if (y.size() != A.dim) throw ParameterError("resolvent: dimension mismatch");
  if (A.kind == MonotoneMap::Kind::kLinear) {
    const DenseMatrix lhs =
        DenseMatrix::Identity(A.dim, A.dim) + gamma * A.matrix;
    const DenseVector rhs =
        A.offset.size() > 0 ? DenseVector(y - gamma * A.offset) : y;
    return solve_dense(lhs, rhs);
  }
  if (A.resolvent_fn) return A.resolvent_fn(y, gamma);
  throw UnsupportedOperatorError("resolvent: no closed form registered for '" +
                                 A.name + "'");
}

NonexpansiveMap nonexpansive_from_monotone(const MonotoneMap& A,
                                           double gamma) {
  if (!has_resolvent(A)) {
    throw UnsupportedOperatorError(
        "nonexpansive_from_monotone: operator has no resolvent");
  }
  NonexpansiveMap T;
  T.dim = A.dim;
  T.known_fix = A.known_zero;
  T.name = "2J(" + A.name + ")-I";
  T.fn = [A, gamma](const DenseVector& y) {
    return DenseVector(2.0 * resolvent(A, y, gamma) - y);
  };
  return T;
}

MonotoneMap yosida(const MonotoneMap& A, double delta) {
  if (delta <= 0.0) throw ParameterError("yosida: delta must be positive");
  if (A.kind == MonotoneMap::Kind::kLinear) {
    // J_{delta A} y = K (y - delta c) with K = (I + delta M)^{-1}, so the
    // regularized map stays linear: A_delta y = (1/delta)(I - K) y + K c.
    const int d = A.dim;
    const DenseMatrix lhs = DenseMatrix::Identity(d, d) + delta * A.matrix;
    Eigen::PartialPivLU<DenseMatrix> lu(lhs);
    const DenseMatrix K = lu.solve(DenseMatrix::Identity(d, d));
    DenseMatrix Ad = (DenseMatrix::Identity(d, d) - K) / delta;
    DenseVector cd = A.offset.size() > 0 ? DenseVector(K * A.offset)
                                         : DenseVector::Zero(d);
    MonotoneMap out;
    out.dim = d;
    out.kind = MonotoneMap::Kind::kLinear;
    out.matrix = std::move(Ad);
    out.offset = std::move(cd);
    out.lipschitz = std::min(1.0 / delta, operator_norm(out.matrix));
    out.known_zero = A.known_zero;
    out.name = "yosida(" + A.name + ")";
    return out;
  }
  if (!A.resolvent_fn) {
    throw UnsupportedOperatorError("yosida: operator has no resolvent");
  }
  MonotoneMap out;
  out.dim = A.dim;
  out.kind = MonotoneMap::Kind::kAnalytic;
  const auto res = A.resolvent_fn;
  out.fn = [res, delta](const DenseVector& x) {
    return DenseVector((x - res(x, delta)) / delta);
  };
  out.lipschitz = 1.0 / delta;
  out.known_zero = A.known_zero;
  out.name = "yosida(" + A.name + ")";
  return out;
}

SaddleProblem make_bilinear_uv() {
  DenseMatrix M(2, 2);
  M << 0, 1, -1, 0;
  MonotoneMap op = MonotoneMap::linear(std::move(M), 0.0, "bilinear_uv");
  op.lipschitz = 1.0;
  op.known_zero = DenseVector::Zero(2);
  SaddleProblem p;
  p.n = 1;
  p.m = 1;
  p.lipschitz = 1.0;
  p.known_saddle = op.known_zero;
  p.name = "bilinear_uv";
  p.op = std::move(op);
  return p;
}

SaddleProblem make_bilinear_matrix(const DenseMatrix& M) {
  const int n = static_cast<int>(M.rows());
  const int m = static_cast<int>(M.cols());
  DenseMatrix big = DenseMatrix::Zero(n + m, n + m);
  big.topRightCorner(n, m) = M;
  big.bottomLeftCorner(m, n) = -M.transpose();
  const double L = operator_norm(M);
  MonotoneMap op = MonotoneMap::linear(std::move(big), 0.0, "bilinear_matrix");
  op.lipschitz = L;
  op.known_zero = DenseVector::Zero(n + m);
  SaddleProblem p;
  p.n = n;
  p.m = m;
  p.lipschitz = L;
  p.known_saddle = op.known_zero;
  p.name = "bilinear_matrix";
  p.op = std::move(op);
  return p;
}

SaddleProblem make_u_squared_v() {
  MonotoneMap op;
  op.dim = 2;
  op.kind = MonotoneMap::Kind::kAnalytic;
  op.fn = [](const DenseVector& x) {
    DenseVector g(2);
    g(0) = 2.0 * x(0) * x(1);
    g(1) = -x(0) * x(0);
    return g;
  };
  // Convex-concave only on [-1,1] x R>=0; this constant covers the region
  // trajectories visit from the customary start (-1, 1).
  op.lipschitz = 20.0;
  op.name = "u_squared_v";
  SaddleProblem p;
  p.n = 1;
  p.m = 1;
  p.lipschitz = 20.0;
  p.name = "u_squared_v (domain [-1,1] x [0,inf))";
  p.op = std::move(op);
  return p;
}

SaddleProblem make_ouyang_xu(int n, double mu) {
  if (n < 2) throw ParameterError("make_ouyang_xu: n must be >= 2");
  DenseMatrix A = DenseMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) A(i, n - 1 - i) = 0.25;
  for (int i = 0; i + 1 < n; ++i) A(i, n - 2 - i) = -0.25;
  const DenseVector b = DenseVector::Constant(n, 0.25);
  DenseVector g = DenseVector::Zero(n);
  g(n - 1) = 0.25;
  const DenseMatrix G = 2.0 * A.transpose() * A;

  DenseMatrix block = DenseMatrix::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = G + mu * DenseMatrix::Identity(n, n);
  block.topRightCorner(n, n) = -A.transpose();
  block.bottomLeftCorner(n, n) = A;
  block.bottomRightCorner(n, n) = mu * DenseMatrix::Identity(n, n);
  DenseVector c(2 * n);
  c.head(n) = -g;
  c.tail(n) = -b;

  const double L = operator_norm(block);
  MonotoneMap op = MonotoneMap::linear(block, c, mu, "ouyang_xu");
  op.lipschitz = L;
  // The saddle point solves the affine system exactly.
  op.known_zero = solve_dense(block, DenseVector(-c));

  SaddleProblem p;
  p.n = n;
  p.m = n;
  p.lipschitz = L;
  p.strong_mu = mu;
  p.known_saddle = op.known_zero;
  p.name = mu > 0 ? "ouyang_xu_mu" : "ouyang_xu";
  p.op = std::move(op);
  return p;
}

namespace {

DenseVector huber_grad(const DenseVector& u, double delta) {
  const double norm = u.norm();
  if (norm <= delta) return u;
  return DenseVector(delta / norm * u);
}

}  // namespace

SaddleProblem make_huber_lagrangian(const DenseMatrix& A, const DenseVector& b,
                                    double delta) {
  if (delta <= 0.0) throw ParameterError("make_huber_lagrangian: delta <= 0");
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.size() != m) {
    throw ParameterError("make_huber_lagrangian: b dimension mismatch");
  }
  MonotoneMap op;
  op.dim = n + m;
  op.kind = MonotoneMap::Kind::kAnalytic;
  DenseMatrix Amat = A;
  DenseVector bvec = b;
  op.fn = [Amat, bvec, delta, n, m](const DenseVector& x) {
    const DenseVector u = x.head(n);
    const DenseVector v = x.tail(m);
    DenseVector out(n + m);
    out.head(n) = huber_grad(u, delta) + Amat.transpose() * v;
    out.tail(m) = bvec - Amat * u;
    return out;
  };
  const double L = 1.0 + operator_norm(A);
  op.lipschitz = L;
  op.name = "huber_lagrangian";
  SaddleProblem p;
  p.n = n;
  p.m = m;
  p.lipschitz = L;
  p.name = "huber_lagrangian";
  p.op = std::move(op);
  return p;
}

SaddleProblem make_huber_lagrangian_random(int n, int m, double delta,
                                           std::uint64_t seed) {
  if (n < 1 || m < 1) throw ParameterError("make_huber_lagrangian_random: bad sizes");
  Rng rng(seed);
  DenseMatrix A = rng.normal_matrix(m, n) / static_cast<double>(n);
  // Planted point with n/10 nonzero coordinates, uniform in [0, 1].
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_u64() % (i + 1));
    std::swap(idx[i], idx[j]);
  }
  DenseVector planted = DenseVector::Zero(n);
  const int nnz = std::max(1, n / 10);
  for (int i = 0; i < nnz; ++i) planted(idx[i]) = rng.uniform();
  const DenseVector b = A * planted;
  return make_huber_lagrangian(A, b, delta);
}

MonotoneMap make_random_linear_monotone(int d, std::uint64_t seed, double mu) {
  if (d < 1) throw ParameterError("make_random_linear_monotone: d < 1");
  Rng rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  const DenseMatrix P = rng.normal_matrix(d, d) * scale;
  const DenseMatrix G = rng.normal_matrix(d, d) * scale;
  const DenseMatrix S = 0.5 * (G - G.transpose());
  DenseMatrix M = P.transpose() * P + S + mu * DenseMatrix::Identity(d, d);
  MonotoneMap map = MonotoneMap::linear(std::move(M), mu,
                                        "random_linear_monotone");
  map.known_zero = DenseVector::Zero(d);
  return map;
}

MonotoneMap make_huber_gradient(int dim, double delta) {
  if (delta <= 0.0) throw ParameterError("make_huber_gradient: delta <= 0");
  MonotoneMap op;
  op.dim = dim;
  op.kind = MonotoneMap::Kind::kAnalytic;
  op.fn = [delta](const DenseVector& u) { return huber_grad(u, delta); };
  // x + gamma grad h(x) = y splits by |y|: inside the quadratic region the
  // resolvent is a plain shrinkage, outside it shortens the norm by
  // gamma*delta.
  op.resolvent_fn = [delta](const DenseVector& y, double gamma) {
    const double norm = y.norm();
    if (norm <= delta * (1.0 + gamma)) return DenseVector(y / (1.0 + gamma));
    return DenseVector((norm - gamma * delta) / norm * y);
  };
  op.lipschitz = 1.0;
  op.known_zero = DenseVector::Zero(dim);
  op.name = "huber_gradient";
  return op;
}

}  // namespace fpdual
