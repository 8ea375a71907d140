#include <doctest.h>

#include <cmath>

#include "fpdual/errors.hpp"
#include "fpdual/numerics.hpp"
#include "fpdual/rng.hpp"
#include "test_util.hpp"

using namespace fpdual;

TEST_CASE("solve_lower_triangular identity") {
  DenseMatrix L = DenseMatrix::Identity(2, 2);
  DenseVector b(2);
  b << 3, 7;
  const DenseVector x = solve_lower_triangular(L, b);
  CHECK(x(0) == doctest::Approx(3.0));
  CHECK(x(1) == doctest::Approx(7.0));
}

TEST_CASE("solve_lower_triangular forward substitution") {
  DenseMatrix L(2, 2);
  L << 2, 0, 1, 1;
  DenseVector b(2);
  b << 4, 5;
  const DenseVector x = solve_lower_triangular(L, b);
  CHECK(x(0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(x(1) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("solve_lower_triangular rejects zero diagonal") {
  DenseMatrix L(2, 2);
  L << 1, 0, 1, 0;
  DenseVector b(2);
  b << 1, 1;
  CHECK_THROWS_AS(solve_lower_triangular(L, b), SingularSystemError);
}

TEST_CASE("solve_lower_triangular residual on random well-conditioned L") {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 30);
    DenseMatrix L = DenseMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) L(i, j) = rng.normal();
      L(i, i) = 1.0 + rng.uniform();
    }
    const DenseVector b = rng.normal_vector(n);
    const DenseVector x = solve_lower_triangular(L, b);
    CHECK((L * x - b).norm() <= 1e-10 * (1.0 + b.norm()));
  }
}

TEST_CASE("min_eigen_sym closed forms") {
  CHECK(min_eigen_sym(DenseMatrix::Identity(3, 3)) == doctest::Approx(1.0));
  DenseMatrix D = DenseMatrix::Zero(3, 3);
  D(0, 0) = 2;
  D(1, 1) = -5;
  D(2, 2) = 0;
  CHECK(min_eigen_sym(D) == doctest::Approx(-5.0));
  DenseMatrix offdiag(2, 2);
  offdiag << 0, 1, 1, 0;  // eigenvalues +-1
  CHECK(min_eigen_sym(offdiag) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("min_eigen_sym rejects asymmetric input") {
  DenseMatrix M(2, 2);
  M << 0, 1, -1, 0;
  CHECK_THROWS_AS(min_eigen_sym(M), ContractViolation);
}

TEST_CASE("min_eigen_sym shift property") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 10);
    DenseMatrix G = rng.normal_matrix(n, n);
    DenseMatrix M = 0.5 * (G + G.transpose());
    const double c = rng.normal();
    const double base = min_eigen_sym(M);
    const double shifted =
        min_eigen_sym(DenseMatrix(M + c * DenseMatrix::Identity(n, n)));
    CHECK(shifted == doctest::Approx(base + c).epsilon(1e-9));
  }
}

TEST_CASE("expm closed forms") {
  CHECK((expm(DenseMatrix::Zero(3, 3), 2.5) - DenseMatrix::Identity(3, 3))
            .norm() == doctest::Approx(0.0));
  DenseMatrix one(1, 1);
  one << 1;
  CHECK(expm(one, 1.0)(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-12));
  // Rotation generator: e^{theta M} = [[cos, sin], [-sin, cos]].
  const DenseMatrix R = expm(testing::rotation2d(), M_PI / 2.0);
  DenseMatrix expect(2, 2);
  expect << 0, 1, -1, 0;
  CHECK((R - expect).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("expm semigroup property") {
  Rng rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 6);
    const DenseMatrix M = rng.normal_matrix(n, n);
    const double s = rng.uniform(-2.0, 2.0);
    const double t = rng.uniform(-2.0, 2.0);
    const DenseMatrix lhs = expm(M, s) * expm(M, t);
    const DenseMatrix rhs = expm(M, s + t);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <=
          1e-8 * (1.0 + rhs.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("operator_norm matches spectral norm") {
  DenseMatrix M(2, 2);
  M << 3, 0, 0, -4;
  CHECK(operator_norm(M) == doctest::Approx(4.0).epsilon(1e-9));
}
