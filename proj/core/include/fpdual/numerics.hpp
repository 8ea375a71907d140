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

#ifndef FPDUAL_NUMERICS_HPP_
#define FPDUAL_NUMERICS_HPP_

#include <Eigen/Dense>

namespace fpdual {

// Dense real vector/matrix types used across the library. Problem sizes are
// small (d <= 500, horizons <= 200), so everything is dense double precision.
using DenseVector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;

inline constexpr double kScalarTol = 1e-10;

bool all_finite(const DenseVector& v);
bool all_finite(const DenseMatrix& m);

// Solves L x = b by forward substitution for square lower-triangular L.
// Throws SingularSystemError when a diagonal entry is zero or negligible
// relative to max|L|.
DenseVector solve_lower_triangular(const DenseMatrix& L, const DenseVector& b);

// Solves a general square system with partial pivoting.
// Throws SingularSystemError on rank deficiency.
DenseVector solve_dense(const DenseMatrix& A, const DenseVector& b);

// Smallest eigenvalue of a symmetric matrix. The input must be symmetric
// within 1e-12 relative; otherwise ContractViolation.
double min_eigen_sym(const DenseMatrix& M);

// Matrix exponential e^{tM} by scaling-and-squaring with a truncated
// Taylor series.
DenseMatrix expm(const DenseMatrix& M, double t = 1.0);

// Spectral norm estimate via power iteration on M^T M.
double operator_norm(const DenseMatrix& M, int max_iters = 100,
                     double rel_tol = 1e-10);

}  // namespace fpdual

#endif  // FPDUAL_NUMERICS_HPP_
