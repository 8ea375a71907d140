#include <doctest.h>

#include <cmath>

#include "fpdual/errors.hpp"
#include "fpdual/numerics.hpp"
#include "fpdual/operators.hpp"
#include "fpdual/rng.hpp"
#include "test_util.hpp"

using namespace fpdual;

TEST_CASE("resolvent closed forms") {
  const MonotoneMap zero = MonotoneMap::zero(2);
  DenseVector y(2);
  y << 1, 2;
  CHECK((resolvent(zero, y, 1.0) - y).norm() == doctest::Approx(0.0));

  const MonotoneMap eye = MonotoneMap::linear(DenseMatrix::Identity(1, 1));
  DenseVector y1(1);
  y1 << 2;
  CHECK(resolvent(eye, y1, 1.0)(0) == doctest::Approx(1.0));

  const MonotoneMap rot = MonotoneMap::linear(testing::rotation2d());
  DenseVector yr(2);
  yr << 1, 0;
  const DenseVector x = resolvent(rot, yr, 1.0);
  CHECK(x(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(x(1) == doctest::Approx(0.5).epsilon(1e-12));
  // residual contract
  CHECK((x + rot(x) - yr).norm() <= 1e-10 * (1.0 + yr.norm()));
}

TEST_CASE("resolvent requires a registered closed form for analytic maps") {
  MonotoneMap op;
  op.dim = 1;
  op.kind = MonotoneMap::Kind::kAnalytic;
  op.fn = [](const DenseVector& x) { return DenseVector(x.array().pow(3)); };
  op.name = "cubic";
  DenseVector y(1);
  y << 1;
  CHECK_THROWS_AS(resolvent(op, y, 1.0), UnsupportedOperatorError);
}

TEST_CASE("nonexpansive_from_monotone closed forms") {
  const NonexpansiveMap t_zero =
      nonexpansive_from_monotone(MonotoneMap::zero(2), 1.0);
  DenseVector y(2);
  y << -1, 4;
  CHECK((t_zero(y) - y).norm() == doctest::Approx(0.0));

  // A = I: T y = 2(y/2) - y = 0.
  const NonexpansiveMap t_eye =
      nonexpansive_from_monotone(MonotoneMap::linear(DenseMatrix::Identity(2, 2)), 1.0);
  CHECK(t_eye(y).norm() == doctest::Approx(0.0));
}

TEST_CASE("nonexpansiveness holds on sampled pairs") {
  Rng rng(123);
  for (int inst = 0; inst < 5; ++inst) {
    const MonotoneMap A = make_random_linear_monotone(6, 100 + inst, 0.0);
    const NonexpansiveMap T = nonexpansive_from_monotone(A, 1.0);
    for (int pair = 0; pair < 200; ++pair) {
      const DenseVector x = rng.normal_vector(6);
      const DenseVector y = rng.normal_vector(6);
      CHECK((T(x) - T(y)).norm() <= (1.0 + 1e-9) * (x - y).norm());
    }
  }
}

TEST_CASE("monotonicity of random linear instances") {
  Rng rng(5);
  for (int inst = 0; inst < 10; ++inst) {
    const MonotoneMap A = make_random_linear_monotone(8, 200 + inst, 0.0);
    for (int pair = 0; pair < 100; ++pair) {
      const DenseVector x = rng.normal_vector(8);
      const DenseVector y = rng.normal_vector(8);
      CHECK((A(x) - A(y)).dot(x - y) >= -1e-10);
    }
  }
}

TEST_CASE("residual identity |y - Ty| = 2|y - J y|") {
  Rng rng(17);
  const MonotoneMap A = make_random_linear_monotone(5, 77, 0.0);
  const NonexpansiveMap T = nonexpansive_from_monotone(A, 1.0);
  for (int i = 0; i < 50; ++i) {
    const DenseVector y = rng.normal_vector(5);
    const DenseVector x = resolvent(A, y, 1.0);
    CHECK(std::abs((y - T(y)).norm() - 2.0 * (y - x).norm()) <= 1e-10);
  }
}

TEST_CASE("yosida closed forms and limits") {
  // A = 0 -> A_delta = 0.
  const MonotoneMap y_zero = yosida(MonotoneMap::zero(2), 1.0);
  DenseVector v(2);
  v << 3, -1;
  CHECK(y_zero(v).norm() == doctest::Approx(0.0));

  // A = I, delta = 1 -> A_delta x = x/2.
  const MonotoneMap y_eye =
      yosida(MonotoneMap::linear(DenseMatrix::Identity(2, 2)), 1.0);
  CHECK((y_eye(v) - 0.5 * v).norm() <= 1e-12);

  // |A_delta x| <= |A x| and A_delta -> A as delta -> 0.
  Rng rng(3);
  const MonotoneMap A = make_random_linear_monotone(6, 303, 0.0);
  double prev_err = 1e300;
  for (const double delta : {1e-1, 1e-2, 1e-3}) {
    const MonotoneMap Ad = yosida(A, delta);
    double max_err = 0.0;
    for (int i = 0; i < 20; ++i) {
      const DenseVector x = rng.normal_vector(6);
      CHECK(Ad(x).norm() <= A(x).norm() + 1e-10);
      max_err = std::max(max_err, (Ad(x) - A(x)).norm());
    }
    CHECK(max_err < prev_err);
    CHECK(max_err <= 20.0 * delta);  // O(delta) convergence on a fixed set
    prev_err = max_err;
  }
}

TEST_CASE("yosida through a registered analytic resolvent") {
  const MonotoneMap H = make_huber_gradient(3, 0.5);
  const MonotoneMap Hd = yosida(H, 0.25);
  Rng rng(9);
  for (int i = 0; i < 30; ++i) {
    const DenseVector x = rng.normal_vector(3);
    // Check the defining property: A_delta(x) in A(J_{delta A} x).
    const DenseVector j = H.resolvent_fn(x, 0.25);
    CHECK((Hd(x) - H(j)).norm() <= 1e-10);
    CHECK(Hd(x).norm() <= H(x).norm() + 1e-10);
  }
}

TEST_CASE("saddle generators: closed-form gradients") {
  const SaddleProblem bilinear = make_bilinear_uv();
  DenseVector x(2);
  x << 1, 1;
  const DenseVector g = bilinear.grad(x);
  CHECK(g(0) == doctest::Approx(1.0));
  CHECK(g(1) == doctest::Approx(-1.0));

  const SaddleProblem cubic = make_u_squared_v();
  DenseVector x2(2);
  x2 << -1, 1;
  const DenseVector g2 = cubic.grad(x2);
  CHECK(g2(0) == doctest::Approx(-2.0));
  CHECK(g2(1) == doctest::Approx(-1.0));
}

TEST_CASE("ouyang-xu construction") {
  const int n = 5;
  const SaddleProblem p = make_ouyang_xu(n, 0.0);
  // Recover A from the v-block of the operator: -grad_v = A u - b.
  DenseVector x = DenseVector::Zero(2 * n);
  const DenseVector at_zero = p.grad(x);
  // A[5,1] (1-based) = 1/4: probe with u = e_1.
  x(0) = 1.0;
  const DenseVector g = p.grad(x);
  CHECK(g(n + n - 1) - at_zero(n + n - 1) == doctest::Approx(0.25));
  // b pattern: -grad_v at zero is -b = -(1/4) ones.
  for (int i = 0; i < n; ++i) {
    CHECK(at_zero(n + i) == doctest::Approx(-0.25));
  }
  CHECK(p.lipschitz <= 1.0 + 1e-9);
  REQUIRE(p.known_saddle.has_value());
  CHECK(p.grad(*p.known_saddle).norm() <= 1e-10);
}

TEST_CASE("ouyang-xu operator norm stays within 1/2") {
  for (const int n : {5, 50, 200}) {
    DenseMatrix A = DenseMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) A(i, n - 1 - i) = 0.25;
    for (int i = 0; i + 1 < n; ++i) A(i, n - 2 - i) = -0.25;
    CHECK(operator_norm(A) <= 0.5 + 1e-9);
  }
}

TEST_CASE("ouyang-xu strongly monotone variant solves its saddle system") {
  const SaddleProblem p = make_ouyang_xu(8, 0.1);
  REQUIRE(p.known_saddle.has_value());
  CHECK(p.grad(*p.known_saddle).norm() <= 1e-9);
  CHECK(p.strong_mu == doctest::Approx(0.1));
}

TEST_CASE("huber lagrangian gradient and sizes") {
  const SaddleProblem p = make_huber_lagrangian_random(20, 5, 0.1, 99);
  CHECK(p.n == 20);
  CHECK(p.m == 5);
  Rng rng(31);
  // Monotonicity spot check on sampled pairs.
  for (int i = 0; i < 200; ++i) {
    const DenseVector a = rng.normal_vector(25);
    const DenseVector b = rng.normal_vector(25);
    CHECK((p.grad(a) - p.grad(b)).dot(a - b) >= -1e-10);
  }
}

TEST_CASE("analytic operators: 1000-pair monotonicity spot checks") {
  Rng rng(2024);
  // u^2 v is convex-concave on [-1,1] x [0,inf): sample inside that domain.
  const SaddleProblem cubic = make_u_squared_v();
  for (int i = 0; i < 1000; ++i) {
    DenseVector a(2), b(2);
    a << rng.uniform(-1.0, 1.0), rng.uniform(0.0, 3.0);
    b << rng.uniform(-1.0, 1.0), rng.uniform(0.0, 3.0);
    CHECK((cubic.grad(a) - cubic.grad(b)).dot(a - b) >= -1e-10);
  }
  const MonotoneMap huber = make_huber_gradient(4, 0.3);
  for (int i = 0; i < 1000; ++i) {
    const DenseVector a = rng.normal_vector(4);
    const DenseVector b = rng.normal_vector(4);
    CHECK((huber(a) - huber(b)).dot(a - b) >= -1e-10);
  }
}

TEST_CASE("problem generators reject bad parameters") {
  CHECK_THROWS_AS(make_ouyang_xu(1, 0.0), ParameterError);
  CHECK_THROWS_AS(make_random_linear_monotone(0, 1, 0.0), ParameterError);
  CHECK_THROWS_AS(make_huber_lagrangian(DenseMatrix::Zero(2, 3),
                                        DenseVector::Zero(3), 0.1),
                  ParameterError);
}
