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

#include "fpdual/numerics.hpp"

#include <cmath>
#include <string>

#include "fpdual/errors.hpp"

namespace fpdual {

bool all_finite(const DenseVector& v) { return v.allFinite(); }
bool all_finite(const DenseMatrix& m) { return m.allFinite(); }

DenseVector solve_lower_triangular(const DenseMatrix& L,
                                   const DenseVector& b) {
  const Eigen::Index n = L.rows();
  if (L.cols() != n || b.size() != n) {
    throw ParameterError("solve_lower_triangular: dimension mismatch");
  }
  const double scale = L.cwiseAbs().maxCoeff();
  const double pivot_floor = 1e-14 * scale;
  DenseVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = L(i, i);
    if (std::abs(d) <= pivot_floor) {
      throw SingularSystemError(
          "solve_lower_triangular: negligible diagonal at row " +
          std::to_string(i));
    }
    double s = b(i);
    for (Eigen::Index j = 0; j < i; ++j) s -= L(i, j) * x(j);
    x(i) = s / d;
  }
  return x;
}

DenseVector solve_dense(const DenseMatrix& A, const DenseVector& b) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || b.size() != n) {
    throw ParameterError("solve_dense: dimension mismatch");
  }
  Eigen::FullPivLU<DenseMatrix> lu(A);
  lu.setThreshold(1e-13);
  if (!lu.isInvertible()) {
    throw SingularSystemError("solve_dense: rank-deficient system");
  }
  return lu.solve(b);
}

double min_eigen_sym(const DenseMatrix& M) {
  const Eigen::Index n = M.rows();
  if (M.cols() != n) throw ParameterError("min_eigen_sym: non-square input");
  if (!all_finite(M)) throw ContractViolation("min_eigen_sym: non-finite input");
  const double scale = M.cwiseAbs().maxCoeff();
  const double skew = (M - M.transpose()).cwiseAbs().maxCoeff();
  if (skew > 1e-12 * (1.0 + scale)) {
    throw ContractViolation("min_eigen_sym: input not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(
      DenseMatrix(0.5 * (M + M.transpose())), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

DenseMatrix expm(const DenseMatrix& M, double t) {
  const Eigen::Index n = M.rows();
  if (M.cols() != n) throw ParameterError("expm: non-square input");
  DenseMatrix B = t * M;
  const double norm = B.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    B /= std::pow(2.0, squarings);
  }
  DenseMatrix result = DenseMatrix::Identity(n, n);
  DenseMatrix term = DenseMatrix::Identity(n, n);
  for (int k = 1; k <= 40; ++k) {
    term = (term * B) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18 * result.cwiseAbs().maxCoeff()) {
      break;
    }
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

double operator_norm(const DenseMatrix& M, int max_iters, double rel_tol) {
  if (M.size() == 0) return 0.0;
  const DenseMatrix G = M.transpose() * M;
  DenseVector v = DenseVector::Ones(G.rows());
  v.normalize();
  double lambda = 0.0;
  for (int i = 0; i < max_iters; ++i) {
    DenseVector w = G * v;
    const double next = w.norm();
    if (next == 0.0) return 0.0;
    w /= next;
    if (std::abs(next - lambda) <= rel_tol * (1.0 + std::abs(next)) && i > 2) {
      lambda = next;
      break;
    }
    lambda = next;
    v = w;
  }
  return std::sqrt(lambda);
}

}  // namespace fpdual
