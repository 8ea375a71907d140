#include <doctest.h>

#include <cmath>

#include "fpdual/errors.hpp"
#include "fpdual/ode.hpp"
#include "fpdual/operators.hpp"
#include "fpdual/rng.hpp"
#include "test_util.hpp"

using namespace fpdual;

namespace {

MonotoneMap rotation_map() {
  MonotoneMap A = MonotoneMap::linear(testing::rotation2d());
  A.known_zero = DenseVector::Zero(2);
  return A;
}

}  // namespace

TEST_CASE("closed form: small-time limit and rotation norm") {
  DenseVector x0(2);
  x0 << 1, 0;
  const DenseVector near0 = anchor_closed_form(testing::rotation2d(), x0, 1e-6);
  CHECK((near0 - x0).norm() <= 1e-5);
  for (const double t : {0.5, 2.0, 7.0}) {
    const DenseVector xt = anchor_closed_form(testing::rotation2d(), x0, t);
    CHECK(xt.norm() ==
          doctest::Approx(2.0 / t * std::abs(std::sin(t / 2.0))).epsilon(1e-9));
  }
  CHECK_THROWS_AS(anchor_closed_form(DenseMatrix::Zero(2, 2), x0, 1.0),
                  ParameterError);
}

TEST_CASE("closed form: strongly monotone lower-bound witness") {
  Rng rng(5150);
  const double mu = 0.3;
  const MonotoneMap A = make_random_linear_monotone(4, 987, mu);
  const DenseVector x0 = rng.unit_vector(4);
  for (const double t : {0.5, 2.0, 10.0}) {
    const DenseVector xt = anchor_closed_form(A.matrix, x0, t);
    CHECK((A.matrix * xt).norm() >=
          (1.0 - std::exp(-mu * t)) / t * x0.norm() - 1e-9);
  }
}

TEST_CASE("anchor integrator: zero operator stays put") {
  const OdeTrajectory traj =
      integrate_anchor(MonotoneMap::zero(3), testing::random_point(1, 3), 5.0,
                       50);
  for (size_t i = 0; i < traj.states.size(); ++i) {
    CHECK((traj.states[i] - traj.states[0]).norm() == 0.0);
  }
}

TEST_CASE("anchor integrator matches the closed form on the rotation") {
  DenseVector x0(2);
  x0 << 1, 0;
  const MonotoneMap A = rotation_map();
  const OdeTrajectory traj = integrate_anchor(A, x0, 10.0, 10000);
  double sup = 0.0;
  for (size_t i = 1; i < traj.times.size(); ++i) {
    const DenseVector oracle =
        anchor_closed_form(A.matrix, x0, traj.times[i]);
    sup = std::max(sup, (traj.states[i] - oracle).norm());
  }
  CHECK(sup <= 1e-6);
}

TEST_CASE("anchor integrator shows fourth-order step decay") {
  DenseVector x0(2);
  x0 << 1, 0;
  const MonotoneMap A = rotation_map();
  auto sup_error = [&](int steps) {
    const OdeTrajectory traj = integrate_anchor(A, x0, 10.0, steps);
    double sup = 0.0;
    for (size_t i = 1; i < traj.times.size(); ++i) {
      sup = std::max(sup, (traj.states[i] -
                           anchor_closed_form(A.matrix, x0, traj.times[i]))
                              .norm());
    }
    return sup;
  };
  double prev = sup_error(50);
  for (const int steps : {100, 200, 400}) {
    const double cur = sup_error(steps);
    if (prev > 1e-10) CHECK(prev / cur >= 12.0);
    prev = cur;
  }
}

TEST_CASE("anchor rate bound on random linear instances") {
  for (int inst = 0; inst < 15; ++inst) {
    Rng rng(40000 + inst);
    const int d = 2 + static_cast<int>(rng.next_u64() % 8);
    const MonotoneMap A = make_random_linear_monotone(d, 40100 + inst, 0.0);
    const DenseVector x0 = rng.normal_vector(d);
    const double T = 5.0;
    const OdeTrajectory traj = integrate_anchor(A, x0, T, 2000);
    CHECK(traj.monitors.at("op_norm_sq").back() <=
          4.0 * x0.squaredNorm() / (T * T) + 1e-7);
  }
}

TEST_CASE("dual-anchor: zero operator, rate, terminal subgradient") {
  const OdeTrajectory idle = integrate_dual_anchor(
      MonotoneMap::zero(2), testing::random_point(3, 2), 4.0, 100);
  for (const auto& x : idle.states) CHECK((x - idle.states[0]).norm() == 0.0);
  for (const auto& z : idle.zs) CHECK(z.norm() == 0.0);

  for (int inst = 0; inst < 15; ++inst) {
    Rng rng(41000 + inst);
    const int d = 2 + static_cast<int>(rng.next_u64() % 8);
    const MonotoneMap A = make_random_linear_monotone(d, 41100 + inst, 0.0);
    const DenseVector x0 = rng.normal_vector(d);
    const double T = 5.0;
    OdeTrajectory traj = integrate_dual_anchor(A, x0, T, 5000);
    CHECK(traj.monitors.at("op_norm_sq").back() <=
          4.0 * x0.squaredNorm() / (T * T) + traj.trunc_error_bound + 1e-6);
    // -Z(T) approaches A(X(T)).
    CHECK((traj.zs.back() + A(traj.states.back())).norm() <=
          1e-4 * (1.0 + x0.norm()));
  }
}

TEST_CASE("monitors vanish identically on the zero operator") {
  const MonotoneMap zero = MonotoneMap::zero(2);
  OdeTrajectory traj =
      integrate_dual_anchor(zero, testing::random_point(11, 2), 3.0, 100);
  const MonitorReport report = attach_monitors(traj, zero);
  for (double v : traj.monitors.at("V")) CHECK(v == 0.0);
  for (double p : traj.monitors.at("Psi")) CHECK(p == 0.0);
  CHECK(report.v_violations == 0);
  CHECK(report.psi_violations == 0);
}

TEST_CASE("dual-anchor monitors are monotone with zero violations") {
  for (int inst = 0; inst < 10; ++inst) {
    Rng rng(42000 + inst);
    const int d = 2 + static_cast<int>(rng.next_u64() % 8);
    const MonotoneMap A = make_random_linear_monotone(d, 42100 + inst, 0.0);
    const DenseVector x0 = rng.normal_vector(d);
    for (const double T : {1.0, 5.0, 20.0}) {
      OdeTrajectory traj = integrate_dual_anchor(A, x0, T, 10000);
      const MonitorReport report = attach_monitors(traj, A);
      CHECK(report.v_violations == 0);
      CHECK(report.psi_violations == 0);
      CHECK(std::abs(report.v_terminal) <= 1e-6 * (1.0 + x0.squaredNorm()));
    }
  }
}

TEST_CASE("monitors require a dual-anchor trajectory") {
  const MonotoneMap A = rotation_map();
  DenseVector x0(2);
  x0 << 1, 0;
  OdeTrajectory anchor = integrate_anchor(A, x0, 2.0, 100);
  CHECK_THROWS_AS(attach_monitors(anchor, A), ParameterError);
}

TEST_CASE("strong monotonicity: velocity decays exponentially") {
  const double mu = 0.1;
  for (int inst = 0; inst < 5; ++inst) {
    Rng rng(43000 + inst);
    const MonotoneMap A = make_random_linear_monotone(6, 43100 + inst, mu);
    const DenseVector x0 = rng.normal_vector(6);
    const OdeTrajectory traj = integrate_dual_anchor(A, x0, 10.0, 10000);
    CHECK(strong_decay_violation(traj, mu, A(x0).norm()) <=
          1e-6 * (1.0 + A(x0).norm()));
  }
}

TEST_CASE("yosida-driven runs: trivial case and delta convergence") {
  const OdeTrajectory idle = integrate_dual_anchor_yosida(
      MonotoneMap::zero(2), 0.1, testing::random_point(9, 2), 3.0, 100);
  for (const auto& x : idle.states) CHECK((x - idle.states[0]).norm() == 0.0);

  Rng rng(44000);
  const MonotoneMap A = make_random_linear_monotone(5, 44100, 0.0);
  const DenseVector x0 = rng.normal_vector(5);
  const double T = 4.0;
  const OdeTrajectory exact = integrate_dual_anchor(A, x0, T, 4000);
  double prev_gap = 1e300;
  DenseVector prev_terminal;
  double prev_step = 0.0;
  for (const double delta : {1e-1, 1e-2, 1e-3}) {
    const OdeTrajectory traj =
        integrate_dual_anchor_yosida(A, delta, x0, T, 4000);
    const double gap = (traj.terminal() - exact.terminal()).norm();
    CHECK(gap < prev_gap);
    CHECK(gap <= 10.0 * delta * (1.0 + x0.norm()));
    // Successive terminal points form a Cauchy sequence with shrinking steps.
    if (prev_terminal.size() > 0) {
      const double step = (traj.terminal() - prev_terminal).norm();
      if (prev_step > 0.0) CHECK(step < prev_step);
      prev_step = step;
    }
    prev_terminal = traj.terminal();
    prev_gap = gap;
    // Rate bound with the regularized operator.
    CHECK(traj.monitors.at("op_norm_sq").back() <=
          4.0 * x0.squaredNorm() / (T * T) + traj.trunc_error_bound + 1e-6);
  }
}

TEST_CASE("yosida integration requires a resolvent") {
  MonotoneMap op;
  op.dim = 1;
  op.kind = MonotoneMap::Kind::kAnalytic;
  op.fn = [](const DenseVector& x) { return x; };
  op.name = "opaque";
  CHECK_THROWS_AS(
      integrate_dual_anchor_yosida(op, 0.1, DenseVector::Zero(1), 1.0, 100),
      UnsupportedOperatorError);
}

TEST_CASE("kernel reflection identity") {
  // Hand value at T = 1, (t, s) = (0.5, 0.25): both routes give -0.5/0.5625.
  const double lhs = -0.5 / (0.75 * 0.75);
  const double rhs = -(1.0 - 0.5) / ((1.0 - 0.25) * (1.0 - 0.25));
  CHECK(lhs == doctest::Approx(rhs));
  CHECK(hkernel_check(1.0, 50) <= 1e-12);
  CHECK(hkernel_check(7.0, 100) <= 1e-12);
  CHECK(std::isfinite(hkernel_check(1.0, 10)));
  CHECK_THROWS_AS(hkernel_check(1.0, 5), ParameterError);
}

TEST_CASE("second-order forms agree with the flows at sampled states") {
  // For linear A the acceleration can be formed in closed form from the
  // first-order right sides; the equivalent second-order equations
  //   anchor:      X'' + (2/t) X' + (1/t) A X + A X' = 0
  //   dual-anchor: X'' + 1/(T-t) X' + A X' = 0
  // must then vanish at every sampled trajectory state.
  Rng rng(46000);
  const MonotoneMap A = make_random_linear_monotone(4, 46100, 0.0);
  const DenseMatrix& M = A.matrix;
  const DenseVector x0 = rng.normal_vector(4);

  const OdeTrajectory anchor = integrate_anchor(A, x0, 5.0, 500);
  for (size_t i = 20; i < anchor.times.size(); i += 37) {
    const double t = anchor.times[i];
    const DenseVector& X = anchor.states[i];
    const DenseVector& Xd = anchor.xdots[i];
    const DenseVector Xdd = -M * Xd - Xd / t - (x0 - X) / (t * t);
    const DenseVector residual = Xdd + 2.0 / t * Xd + M * X / t + M * Xd;
    CHECK(residual.norm() <= 1e-10 * (1.0 + Xd.norm()));
  }

  const double T = 5.0;
  const OdeTrajectory dual = integrate_dual_anchor(A, x0, T, 500);
  for (size_t i = 10; i < dual.times.size(); i += 41) {
    const double t = dual.times[i];
    const DenseVector& Xd = dual.xdots[i];
    const DenseVector Zd = Xd / (T - t);  // from the Z equation
    const DenseVector Xdd = -Zd - M * Xd;
    const DenseVector residual = Xdd + Xd / (T - t) + M * Xd;
    CHECK(residual.norm() <= 1e-10 * (1.0 + Xd.norm()));
  }
}

TEST_CASE("anchor and dual-anchor terminal states agree for linear maps") {
  // Informational counterpart of the discrete identity; reported only.
  Rng rng(45000);
  const MonotoneMap A = make_random_linear_monotone(4, 45100, 0.0);
  const DenseVector x0 = rng.normal_vector(4);
  const double T = 5.0;
  const OdeTrajectory a = integrate_anchor(A, x0, T, 20000);
  const OdeTrajectory b = integrate_dual_anchor(A, x0, T, 20000);
  const double gap = (a.terminal() - b.terminal()).norm();
  MESSAGE("anchor vs dual-anchor terminal gap: ", gap);
  CHECK(gap <= 1e-2 * (1.0 + x0.norm()));  // loose: truncation-dominated
}
