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

#include "fpdual/hduality.hpp"

#include <cmath>
#include <vector>

#include "fpdual/errors.hpp"
#include "fpdual/rng.hpp"

namespace fpdual {

namespace {

void check_positive(const ProofWeights& w) {
  for (int j = 1; j <= w.count(); ++j) {
    if (!(w.at(j) > 0.0)) {
      throw ParameterError("ProofWeights: weights must be strictly positive");
    }
  }
}

// Iterates of the H-driven dynamics with prescribed residual vectors:
// y_0 = 0 (the forms do not depend on it), y_k = y_{k-1} - sum_j 2 h_{k,j} g_j
// and x_k = y_{k-1} - g_k. Returns x_1..x_N.
std::vector<DenseVector> drive(const HMatrix& H,
                               const std::vector<DenseVector>& g) {
  const int N = H.n + 1;
  const auto d = g.front().size();
  std::vector<DenseVector> x(N);
  DenseVector y = DenseVector::Zero(d);
  for (int k = 1; k <= N; ++k) {
    x[k - 1] = y - g[k - 1];
    if (k <= N - 1) {
      for (int j = 1; j <= k; ++j) y -= 2.0 * H(k, j) * g[j - 1];
    }
  }
  return x;
}

double s_value(const HMatrix& H, const ProofWeights& u, double tau,
               const std::vector<DenseVector>& g) {
  const int N = H.n + 1;
  const auto x = drive(H, g);
  double acc = 0.0;
  for (int j = 1; j <= N - 1; ++j) {
    acc -= u.at(j) * (x[j] - x[j - 1]).dot(g[j] - g[j - 1]);
  }
  return acc - tau * g[N - 1].squaredNorm() - g[N - 1].dot(x[N - 1]);
}

double t_value(const HMatrix& HA, const ProofWeights& v, double tau,
               const std::vector<DenseVector>& g) {
  const int N = HA.n + 1;
  const auto x = drive(HA, g);
  double v0 = 0.0;
  for (int k = 1; k <= N - 1; ++k) {
    v0 += v.at(k) * (x[N - 1] - x[k - 1]).dot(g[N - 1] - g[k - 1]);
  }
  return -v0 - tau * g[N - 1].squaredNorm() - g[N - 1].dot(x[N - 1]);
}

template <typename Eval>
QuadForm probe_form(int N, const Eval& eval) {
  std::vector<DenseVector> g(N, DenseVector::Zero(1));
  DenseVector diag(N);
  QuadForm form;
  form.S = DenseMatrix::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    for (auto& gk : g) gk(0) = 0.0;
    g[i](0) = 1.0;
    diag(i) = eval(g);
    form.S(i, i) = diag(i);
  }
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      for (auto& gk : g) gk(0) = 0.0;
      g[i](0) = 1.0;
      g[j](0) = 1.0;
      const double pair = eval(g);
      form.S(i, j) = form.S(j, i) = 0.5 * (pair - diag(i) - diag(j));
    }
  }
  return form;
}

}  // namespace

ProofWeights dualize_weights(const ProofWeights& u) {
  check_positive(u);
  const int n = u.count();
  ProofWeights v;
  v.weights = DenseVector::Zero(n);
  for (int j = 1; j <= n; ++j) v.weights(j - 1) = 1.0 / u.at(n + 1 - j);
  return v;
}

QuadForm s_form(const HMatrix& H, const ProofWeights& u, double tau) {
  check_positive(u);
  if (u.count() != H.n) {
    throw ParameterError("s_form: weight count must match matrix size");
  }
  return probe_form(H.n + 1, [&](const std::vector<DenseVector>& g) {
    return s_value(H, u, tau, g);
  });
}

QuadForm t_form(const HMatrix& HA, const ProofWeights& v, double tau) {
  check_positive(v);
  if (v.count() != HA.n) {
    throw ParameterError("t_form: weight count must match matrix size");
  }
  return probe_form(HA.n + 1, [&](const std::vector<DenseVector>& g) {
    return t_value(HA, v, tau, g);
  });
}

std::vector<DenseVector> f_map(const ProofWeights& u,
                               const std::vector<DenseVector>& g) {
  const int N = static_cast<int>(g.size());
  if (u.count() != N - 1) throw ParameterError("f_map: size mismatch");
  std::vector<DenseVector> out(N);
  for (int k = 1; k <= N - 1; ++k) {
    out[k - 1] = u.at(N - k) * (g[N - k] - g[N - k - 1]) + g[N - 1];
  }
  out[N - 1] = g[N - 1];
  return out;
}

std::vector<DenseVector> f_inverse(const ProofWeights& u,
                                   const std::vector<DenseVector>& g) {
  const int N = static_cast<int>(g.size());
  if (u.count() != N - 1) throw ParameterError("f_inverse: size mismatch");
  std::vector<DenseVector> out(N);
  out[N - 1] = g[N - 1];
  for (int m = N - 1; m >= 1; --m) {
    DenseVector acc = g[N - 1];
    for (int k = 1; k <= N - m; ++k) {
      acc += 1.0 / u.at(N - k) * (g[N - 1] - g[k - 1]);
    }
    out[m - 1] = acc;
  }
  return out;
}

DualityReport verify_duality(const HMatrix& H, const ProofWeights& u,
                             double tau, int trials, std::uint64_t seed) {
  if (trials < 1) throw ParameterError("verify_duality: trials must be >= 1");
  check_positive(u);
  const int N = H.n + 1;
  const HMatrix HA = anti_transpose(H);
  const ProofWeights v = dualize_weights(u);
  Rng rng(seed);
  DualityReport report;
  for (int t = 0; t < trials; ++t) {
    const int d = 1 + t % 3;
    std::vector<DenseVector> g(N);
    for (auto& gk : g) gk = rng.normal_vector(d);
    const double s = s_value(H, u, tau, g);
    const double tt = t_value(HA, v, tau, f_map(u, g));
    report.max_discrepancy =
        std::max(report.max_discrepancy, std::abs(s - tt));
  }
  report.min_eig_s = s_form(H, u, tau).min_eigenvalue();
  report.min_eig_t = t_form(HA, v, tau).min_eigenvalue();
  const bool psd_s = report.min_eig_s >= -1e-8;
  const bool psd_t = report.min_eig_t >= -1e-8;
  report.sign_agreement = psd_s == psd_t;
  return report;
}

ProofWeights ohm_weights(int N) {
  if (N < 2) throw ParameterError("ohm_weights: N must be >= 2");
  ProofWeights u;
  u.weights = DenseVector::Zero(N - 1);
  for (int j = 1; j <= N - 1; ++j) {
    u.weights(j - 1) = static_cast<double>(j) * (j + 1) / N;
  }
  return u;
}

ProofWeights dual_ohm_weights(int N) {
  if (N < 2) throw ParameterError("dual_ohm_weights: N must be >= 2");
  ProofWeights v;
  v.weights = DenseVector::Zero(N - 1);
  for (int j = 1; j <= N - 1; ++j) {
    v.weights(j - 1) =
        static_cast<double>(N) / (static_cast<double>(N - j) * (N - j + 1));
  }
  return v;
}

}  // namespace fpdual
