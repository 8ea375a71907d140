#include <doctest.h>

#include <cmath>

#include "fpdual/errors.hpp"
#include "fpdual/hmatrix.hpp"
#include "fpdual/minimax.hpp"
#include "fpdual/operators.hpp"
#include "fpdual/rng.hpp"
#include "test_util.hpp"

using namespace fpdual;

namespace {

double max_iterate_gap(const Trace& a, const Trace& b) {
  const size_t n = std::min(a.iterates.size(), b.iterates.size());
  double gap = 0.0;
  for (size_t i = 0; i < n; ++i) {
    gap = std::max(gap, (a.iterates[i] - b.iterates[i]).norm());
  }
  return gap;
}

SaddleProblem random_linear_problem(int d, std::uint64_t seed, double mu = 0) {
  return SaddleProblem::from_monotone(
      make_random_linear_monotone(d, seed, mu));
}

}  // namespace

TEST_CASE("zero operator keeps every method at the start point") {
  const SaddleProblem p = SaddleProblem::from_monotone(MonotoneMap::zero(3));
  const DenseVector x0 = testing::random_point(2, 3);
  for (const auto m :
       {MinimaxMethod::kEg, MinimaxMethod::kFeg, MinimaxMethod::kDualFeg}) {
    const Trace t = run_minimax(m, p, x0, 0.5, 6);
    for (const auto& x : t.iterates) CHECK((x - x0).norm() == 0.0);
  }
}

TEST_CASE("eg first step on the scalar bilinear problem") {
  // x_{1/2} = x0 - alpha A x0, x_1 = x0 - alpha A x_{1/2}.
  const SaddleProblem p = make_bilinear_uv();
  DenseVector x0(2);
  x0 << 1, 0;
  const Trace t = run_minimax(MinimaxMethod::kEg, p, x0, 1.0, 1,
                              MinimaxOptions{.keep_half = true});
  CHECK(t.half_iterates[0](0) == doctest::Approx(1.0));
  CHECK(t.half_iterates[0](1) == doctest::Approx(1.0));
  CHECK(t.iterates[1](0) == doctest::Approx(0.0));
  CHECK(t.iterates[1](1) == doctest::Approx(1.0));
}

TEST_CASE("feg first step on the scalar bilinear problem") {
  const SaddleProblem p = make_bilinear_uv();
  DenseVector x0(2);
  x0 << 1, 0;
  const Trace t = run_minimax(MinimaxMethod::kFeg, p, x0, 1.0, 1,
                              MinimaxOptions{.keep_half = true});
  // k = 0: the half step carries a zero gradient coefficient.
  CHECK((t.half_iterates[0] - x0).norm() == doctest::Approx(0.0));
  CHECK(t.iterates[1](0) == doctest::Approx(1.0));
  CHECK(t.iterates[1](1) == doctest::Approx(1.0));
}

TEST_CASE("evaluation budget is exactly 2N") {
  const SaddleProblem p = random_linear_problem(4, 55);
  const DenseVector x0 = testing::random_point(3, 4);
  for (const auto m :
       {MinimaxMethod::kEg, MinimaxMethod::kFeg, MinimaxMethod::kDualFeg}) {
    const Trace t = run_minimax(m, p, x0, default_alpha(p), 9);
    CHECK(t.evals == 18);
    CHECK(t.eval_calls_total == 19);  // terminal measurement
  }
}

TEST_CASE("alpha beyond 1/L is flagged, not rejected") {
  const SaddleProblem p = make_bilinear_uv();  // L = 1
  const DenseVector x0 = testing::random_point(4, 2);
  CHECK_FALSE(run_minimax(MinimaxMethod::kFeg, p, x0, 1.0, 3).guarantee_flagged);
  CHECK(run_minimax(MinimaxMethod::kFeg, p, x0, 1.5, 3).guarantee_flagged);
}

TEST_CASE("feg rate bound at every index; dual-feg at the terminal") {
  for (int inst = 0; inst < 40; ++inst) {
    Rng rng(20000 + inst);
    const int d = 2 + static_cast<int>(rng.next_u64() % 10);
    const int N = 2 + static_cast<int>(rng.next_u64() % 40);
    const SaddleProblem p =
        inst % 2 == 0 ? make_bilinear_uv() : random_linear_problem(d, inst);
    const double alpha = default_alpha(p);
    const DenseVector x0 = rng.normal_vector(p.dim());
    const double r2 = (x0 - *p.known_saddle).squaredNorm();

    const Trace feg = run_minimax(MinimaxMethod::kFeg, p, x0, alpha, N);
    const auto& series = feg.metrics.at("grad_norm_sq");
    for (size_t i = 0; i < series.iters.size(); ++i) {
      const int k = series.iters[i];
      if (k == 0) continue;
      CHECK(series.values[i] <=
            4.0 * r2 / (alpha * alpha * k * k) + 1e-9);
    }

    const Trace dual = run_minimax(MinimaxMethod::kDualFeg, p, x0, alpha, N);
    CHECK(dual.metrics.at("grad_norm_sq").values.back() <=
          4.0 * r2 / (alpha * alpha * N * N) + 1e-9);
  }
}

TEST_CASE("methods agree with their step-size matrices") {
  for (int inst = 0; inst < 10; ++inst) {
    Rng rng(21000 + inst);
    const int d = 2 + static_cast<int>(rng.next_u64() % 8);
    const int N = 1 + static_cast<int>(rng.next_u64() % 12);
    const SaddleProblem p = random_linear_problem(d, 21100 + inst);
    const double L = p.lipschitz;
    const double alpha = 0.8 / L;
    const DenseVector x0 = rng.normal_vector(d);
    const double tol = 1e-12 * (1.0 + x0.norm());

    const Trace feg = run_minimax(MinimaxMethod::kFeg, p, x0, alpha, N);
    const Trace feg_h = run_grad_hmatrix(
        named_gradient_hmatrix(GradientMethod::kFeg, N, alpha * L), p, x0, L);
    CHECK(max_iterate_gap(feg, feg_h) <= tol);

    const Trace dual = run_minimax(MinimaxMethod::kDualFeg, p, x0, alpha, N);
    const Trace dual_h = run_grad_hmatrix(
        named_gradient_hmatrix(GradientMethod::kDualFeg, N, alpha * L), p, x0,
        L);
    CHECK(max_iterate_gap(dual, dual_h) <= tol);
  }
}

TEST_CASE("dual-feg lyapunov: zero operator gives the zero series") {
  const SaddleProblem p = SaddleProblem::from_monotone(MonotoneMap::zero(2));
  const DenseVector x0 = testing::random_point(5, 2);
  const Trace t = run_minimax(MinimaxMethod::kDualFeg, p, x0, 0.7, 5,
                              MinimaxOptions{.keep_half = true});
  const LyapunovSeries v = dual_feg_lyapunov(p, t, 0.7);
  for (double val : v.values) CHECK(std::abs(val) <= 1e-14);
}

TEST_CASE("dual-feg lyapunov on random instances at alpha = 1/L") {
  for (int inst = 0; inst < 25; ++inst) {
    Rng rng(22000 + inst);
    const int d = 2 + static_cast<int>(rng.next_u64() % 10);
    const int N = 2 + static_cast<int>(rng.next_u64() % 25);
    const SaddleProblem p = random_linear_problem(d, 22100 + inst);
    const double alpha = default_alpha(p);
    const DenseVector x0 = rng.normal_vector(d);
    const Trace t = run_minimax(MinimaxMethod::kDualFeg, p, x0, alpha, N,
                                MinimaxOptions{.keep_half = true});
    const LyapunovSeries v = dual_feg_lyapunov(p, t, alpha);
    const double scale = 1.0 + x0.squaredNorm();
    CHECK(v.nonincreasing);
    CHECK(v.values.back() >= -1e-9 * scale);
    for (double mi : v.mi) CHECK(mi >= -1e-10 * scale);
    for (double li : v.li) CHECK(li >= -1e-10 * scale);
    CHECK(v.max_identity_gap <= 1e-9 * scale);
  }
}

TEST_CASE("dual-feg lyapunov rejects wrong traces") {
  const SaddleProblem p = random_linear_problem(3, 1);
  const DenseVector x0 = testing::random_point(6, 3);
  const Trace feg = run_minimax(MinimaxMethod::kFeg, p, x0, 0.1, 4);
  CHECK_THROWS_AS(dual_feg_lyapunov(p, feg, 0.1), ParameterError);
  const Trace no_half = run_minimax(MinimaxMethod::kDualFeg, p, x0, 0.1, 4);
  CHECK_THROWS_AS(dual_feg_lyapunov(p, no_half, 0.1), ParameterError);
}

TEST_CASE("terminal iterates coincide exactly for linear operators") {
  // Zero operator: both runs stay at x0, distance exactly 0.
  CHECK(terminal_match_linear(
            SaddleProblem::from_monotone(MonotoneMap::zero(3)),
            testing::random_point(8, 3), 0.3, 5) == 0.0);
  // Scalar bilinear instance.
  CHECK(terminal_match_linear(make_bilinear_uv(),
                              testing::random_point(7, 2), 0.1, 20) <= 1e-10);
  // Across horizons on seeded instances.
  for (int inst = 0; inst < 10; ++inst) {
    Rng rng(23000 + inst);
    const int N = 1 + static_cast<int>(rng.next_u64() % 50);
    const SaddleProblem p = random_linear_problem(5, 23100 + inst);
    const DenseVector x0 = rng.normal_vector(5);
    CHECK(terminal_match_linear(p, x0, 0.5 * default_alpha(p), N) <= 1e-8);
  }
}

TEST_CASE("terminal iterates differ off the linear class") {
  const SaddleProblem p = make_u_squared_v();
  DenseVector x0(2);
  x0 << -1, 1;
  const Trace feg = run_minimax(MinimaxMethod::kFeg, p, x0, 0.05, 500);
  const Trace dual = run_minimax(MinimaxMethod::kDualFeg, p, x0, 0.05, 500);
  const double dist =
      (feg.iterates.back() - dual.iterates.back()).norm() / (1.0 + x0.norm());
  CHECK(dist > 1e-6);
  CHECK_THROWS_AS(terminal_match_linear(p, x0, 0.05, 10), ParameterError);
}
