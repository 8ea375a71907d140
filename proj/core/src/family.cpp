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

#include "fpdual/family.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fpdual/errors.hpp"
#include "fpdual/rng.hpp"

namespace fpdual {

namespace {

// Closed-form multipliers as functions of p (1-based; p_N = 1 by convention).
// The dummy lambda_{1,0} evaluates to zero whenever p_1 = 1/N, which lets the
// diagonal coefficient formulas avoid a k = 1 special case.
struct Multipliers {
  int N;
  DenseVector chain;  // lambda_{k+1,k}, k = 1..N-2
  DenseVector to_n;   // lambda_{N,k},   k = 1..N-1

  double chain_at(int k) const {  // lambda_{k+1,k}, k = 0 gives the dummy
    if (k == 0) return 0.0;
    return chain(k - 1);
  }
  double to_n_at(int k) const { return to_n(k - 1); }
};

double p_at(const PVector& pv, int k) {
  return k == pv.N ? 1.0 : pv.p(k - 1);
}

Multipliers make_multipliers(const PVector& pv) {
  const int N = pv.N;
  Multipliers m;
  m.N = N;
  m.chain = DenseVector::Zero(std::max(0, N - 2));
  m.to_n = DenseVector::Zero(N - 1);
  for (int k = 1; k <= N - 2; ++k) {
    const double pk1 = p_at(pv, k + 1);
    m.chain(k - 1) =
        static_cast<double>(N) / (N - k - 1) * pk1 * ((N - k) * pk1 - 1.0);
    m.to_n(k - 1) = static_cast<double>(N) /
                        (static_cast<double>(N - k) * (N - k - 1)) -
                    static_cast<double>(N) / (N - k - 1) * pk1 +
                    static_cast<double>(N) / (N - k) * p_at(pv, k);
  }
  m.to_n(N - 2) = N * p_at(pv, N - 1);  // lambda_{N,N-1}
  return m;
}

void check_p1(const PVector& pv) {
  if (pv.N < 2 || pv.p.size() != pv.N - 1) {
    throw ParameterError("PVector: need N >= 2 and N-1 entries");
  }
  if (std::abs(pv.p(0) - 1.0 / pv.N) > 1e-12) {
    throw ParameterError("PVector: p_1 must equal 1/N");
  }
}

}  // namespace

PVector named_pvector(PVectorKind kind, int N) {
  if (N < 2) throw ParameterError("named_pvector: N must be >= 2");
  PVector pv;
  pv.N = N;
  pv.p = DenseVector::Zero(N - 1);
  for (int k = 1; k <= N - 1; ++k) {
    pv.p(k - 1) = kind == PVectorKind::kOhm
                      ? static_cast<double>(k) / N
                      : 1.0 / (N - k + 1);
  }
  return pv;
}

PVector interpolate_pvector(double gamma, int N) {
  if (N < 3) throw ParameterError("interpolate_pvector: N must be >= 3");
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw ParameterError("interpolate_pvector: gamma must lie in (0, 1)");
  }
  const PVector a = named_pvector(PVectorKind::kOhm, N);
  const PVector b = named_pvector(PVectorKind::kDualOhm, N);
  PVector pv;
  pv.N = N;
  pv.p = gamma * a.p + (1.0 - gamma) * b.p;
  pv.p(0) = 1.0 / N;  // exact
  return pv;
}

bool is_interior(const PVector& pv) {
  const int N = pv.N;
  if (N < 3 || pv.p.size() != N - 1) return false;
  if (std::abs(pv.p(0) - 1.0 / N) > 1e-12) return false;
  for (int k = 2; k <= N - 1; ++k) {
    if (!(p_at(pv, k) > 1.0 / (N - k + 1))) return false;
  }
  for (int k = 1; k <= N - 2; ++k) {
    const double bound = static_cast<double>(N - k) / (N - k - 1) *
                             p_at(pv, k + 1) -
                         1.0 / (N - k - 1);
    if (!(p_at(pv, k) > bound)) return false;
  }
  return true;
}

PVector pvector_from_hmatrix(const HMatrix& H) {
  if (H.scale != HMatrix::Scale::kFixedPoint) {
    throw ParameterError("pvector_from_hmatrix: fixed_point matrix required");
  }
  PVector pv;
  pv.N = H.n + 1;
  pv.p = DenseVector::Zero(H.n);
  double prod = 1.0;
  for (int k = H.n; k >= 1; --k) {
    prod *= H(k, k);
    pv.p(k - 1) = prod;
  }
  return pv;
}

FamilyCertificate lambdas_and_q(const PVector& pv) {
  check_p1(pv);
  const int N = pv.N;
  const Multipliers m = make_multipliers(pv);
  FamilyCertificate cert;
  cert.N = N;
  cert.lambda_chain = m.chain;
  cert.lambda_to_n = m.to_n;
  cert.q = DenseVector::Zero(N - 1);
  for (int k = 1; k <= N - 1; ++k) {
    cert.q(k - 1) = 1.0 - (N - k) * p_at(pv, k + 1) + (N - k + 1) * p_at(pv, k);
  }
  cert.telescoping_gap = std::abs(m.to_n.sum() - (N - 1.0));
  if (cert.telescoping_gap > 1e-10) {
    throw InternalConsistencyError(
        "lambdas_and_q: multiplier telescoping failed, gap " +
        std::to_string(cert.telescoping_gap));
  }
  cert.min_lambda = m.to_n.minCoeff();
  if (m.chain.size() > 0) {
    cert.min_lambda = std::min(cert.min_lambda, m.chain.minCoeff());
  }
  cert.lambdas_nonneg = cert.min_lambda >= -1e-12;
  return cert;
}

HMatrix synthesize(const PVector& pv) {
  check_p1(pv);
  const int N = pv.N;
  // O(N^3) pivoted solves with conditioning that degrades toward the
  // boundary; capped at desk scale.
  if (N > 200) throw ParameterError("synthesize: N is capped at 200");
  const Multipliers lam = make_multipliers(pv);
  HMatrix H;
  H.n = N - 1;
  H.scale = HMatrix::Scale::kFixedPoint;
  H.entries = DenseMatrix::Zero(N - 1, N - 1);
  for (int k = 1; k <= N - 2; ++k) {
    H.entries(k - 1, k - 1) = p_at(pv, k) / p_at(pv, k + 1);
  }
  H.entries(N - 2, N - 2) = p_at(pv, N - 1);

  DenseVector q(N - 1);
  for (int k = 1; k <= N - 1; ++k) {
    q(k - 1) = 1.0 - (N - k) * p_at(pv, k + 1) + (N - k + 1) * p_at(pv, k);
  }

  // Column systems, outermost column first. Columns j > k are closed by the
  // time column k is assembled, entering only through their sums q_j / 2.
  for (int k = N - 2; k >= 1; --k) {
    const int nk = N - 1 - k;  // unknowns h_{k+1,k} .. h_{N-1,k}
    const double hkk = H(k, k);
    DenseMatrix B = DenseMatrix::Zero(nk, nk);
    DenseVector b = DenseVector::Zero(nk);
    if (k == N - 2) {
      B(0, 0) = lam.to_n_at(N - 1);
      b(0) = -lam.chain_at(N - 2) * (1.0 - hkk) -
             lam.to_n_at(N - 2) * H(N - 1, N - 1);
    } else {
      // Row for position k+1.
      B(0, 0) = lam.chain_at(k + 1);
      for (int i = 0; i < nk; ++i) B(0, i) += lam.to_n_at(k + 1);
      b(0) = -lam.chain_at(k) * (1.0 - hkk) - lam.to_n_at(k) * q(k) / 2.0;
      // Rows for positions l = k+2 .. N-2.
      for (int l = k + 2; l <= N - 2; ++l) {
        const int r = l - k - 1;
        B(r, l - k - 2) -= lam.chain_at(l - 1);
        B(r, l - k - 1) += lam.chain_at(l);
        for (int i = l - k - 1; i < nk; ++i) B(r, i) += lam.to_n_at(l);
        b(r) = -lam.to_n_at(k) * q(l - 1) / 2.0;
      }
      // Row for position N-1.
      B(nk - 1, nk - 2) -= lam.chain_at(N - 2);
      B(nk - 1, nk - 1) += lam.to_n_at(N - 1);
      b(nk - 1) = -lam.to_n_at(k) * H(N - 1, N - 1);
    }
    Eigen::FullPivLU<DenseMatrix> lu(B);
    lu.setThreshold(1e-11);
    if (!lu.isInvertible()) {
      throw SynthesisFailure(
          "synthesize: singular column system at column " + std::to_string(k),
          k);
    }
    const DenseVector h = lu.solve(b);
    for (int i = 0; i < nk; ++i) H.entries(k + i, k - 1) = h(i);
  }
  return H;
}

namespace {

// Scalar evaluation of the defining identity for coefficient probing: drive
// the fixed-point dynamics with prescribed residual values g_k (dimension 1,
// y_0 = 0) and evaluate the full weighted expression.
double identity_eval(const HMatrix& H, const Multipliers& lam,
                     const DenseVector& g) {
  const int N = lam.N;
  DenseVector y = DenseVector::Zero(N);  // y_0 .. y_{N-1}
  for (int k = 1; k <= N - 1; ++k) {
    double acc = y(k - 1);
    for (int j = 1; j <= k; ++j) acc -= 2.0 * H(k, j) * g(j - 1);
    y(k) = acc;
  }
  DenseVector x(N + 1);
  for (int k = 1; k <= N; ++k) x(k) = y(k - 1) - g(k - 1);
  double e = g(N - 1) * x(N) + N * g(N - 1) * g(N - 1);
  for (int k = 1; k <= N - 2; ++k) {
    e += lam.chain_at(k) * (g(k) - g(k - 1)) * (x(k + 1) - x(k));
    e += lam.to_n_at(k) * (g(N - 1) - g(k - 1)) * (x(N) - x(k));
  }
  e += lam.to_n_at(N - 1) * (g(N - 1) - g(N - 2)) * (x(N) - x(N - 1));
  return e;
}

}  // namespace

FamilyCertificate certify(const HMatrix& H, const PVector& pv) {
  check_p1(pv);
  const int N = pv.N;
  if (H.n != N - 1 || H.scale != HMatrix::Scale::kFixedPoint) {
    throw ParameterError("certify: matrix/parameter size mismatch");
  }
  FamilyCertificate cert = lambdas_and_q(pv);
  const Multipliers lam = make_multipliers(pv);

  // Column sums over rows i..N-1 of column j.
  auto colsum = [&](int j, int from) {
    double s = 0.0;
    for (int i = from; i <= N - 1; ++i) s += H(i, j);
    return s;
  };
  // Lambda_l = sum_{j<=l} lambda_{N,j}.
  DenseVector Lambda = DenseVector::Zero(N);
  for (int l = 1; l <= N - 1; ++l) Lambda(l) = Lambda(l - 1) + lam.to_n_at(l);

  double max_res = 0.0;
  auto note = [&](double s) { max_res = std::max(max_res, std::abs(s)); };

  double total = 0.0;
  for (int k = 1; k <= N - 1; ++k) total += lam.to_n_at(k);
  note(N - 1.0 - total);  // s_{N,N}

  const double h_last = H(N - 1, N - 1);
  note(-lam.chain_at(N - 2) + lam.to_n_at(N - 1) * (2.0 * h_last - 1.0));
  note(-2.0 * h_last - 2.0 * h_last * (Lambda(N - 2)) -
       2.0 * lam.to_n_at(N - 1) * (h_last - 1.0));  // s_{N,N-1}

  for (int k = 1; k <= N - 2; ++k) {
    const double hkk = H(k, k);
    note(lam.chain_at(k) * (2.0 * hkk - 1.0) - lam.chain_at(k - 1) +
         lam.to_n_at(k) * (2.0 * colsum(k, k) - 1.0));  // s_{k,k}
    double snk = 2.0 * lam.to_n_at(k);
    for (int l = k; l <= N - 1; ++l) snk -= (1.0 + Lambda(l)) * 2.0 * H(l, k);
    note(snk);  // s_{N,k}
    if (k == N - 2) {
      note(2.0 * lam.chain_at(N - 2) * (1.0 - hkk) +
           2.0 * lam.to_n_at(N - 1) * H(N - 1, N - 2) +
           2.0 * lam.to_n_at(N - 2) * h_last);  // s_{N-1,N-2}
      continue;
    }
    note(2.0 * lam.chain_at(k) * (1.0 - hkk) +
         2.0 * lam.chain_at(k + 1) * H(k + 1, k) +
         2.0 * lam.to_n_at(k) * colsum(k + 1, k + 1) +
         2.0 * lam.to_n_at(k + 1) * colsum(k, k + 1));  // s_{k+1,k}
    for (int l = k + 2; l <= N - 2; ++l) {
      note(-2.0 * lam.chain_at(l - 1) * H(l - 1, k) +
           2.0 * lam.chain_at(l) * H(l, k) +
           2.0 * lam.to_n_at(k) * colsum(l, l) +
           2.0 * lam.to_n_at(l) * colsum(k, l));  // s_{l,k}
    }
    note(2.0 * lam.to_n_at(k) * h_last - 2.0 * lam.chain_at(N - 2) * H(N - 2, k) +
         2.0 * lam.to_n_at(N - 1) * H(N - 1, k));  // s_{N-1,k}
  }
  cert.max_residual = max_res;

  // Independent route: recover the same coefficients by probing the defining
  // scalar expression on indicator and paired-indicator inputs.
  DenseMatrix S = DenseMatrix::Zero(N, N);
  DenseVector probe = DenseVector::Zero(N);
  DenseVector diag(N);
  for (int i = 0; i < N; ++i) {
    probe.setZero();
    probe(i) = 1.0;
    diag(i) = identity_eval(H, lam, probe);
    S(i, i) = diag(i);
  }
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      probe.setZero();
      probe(i) = 1.0;
      probe(j) = 1.0;
      const double pair = identity_eval(H, lam, probe);
      S(i, j) = S(j, i) = 0.5 * (pair - diag(i) - diag(j));
    }
  }
  double max_probe = 0.0;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double coeff = i == j ? S(i, i) : 2.0 * S(i, j);
      max_probe = std::max(max_probe, std::abs(coeff));
    }
  }
  cert.max_residual_probe = max_probe;
  cert.psd_margin = min_eigen_sym(S);

  Rng rng(0x5eed);
  double max_rand = 0.0;
  for (int t = 0; t < 5; ++t) {
    max_rand = std::max(
        max_rand, std::abs(identity_eval(H, lam, rng.normal_vector(N))));
  }
  cert.identity_residual_random = max_rand;
  return cert;
}

}  // namespace fpdual
