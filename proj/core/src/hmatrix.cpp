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

#include "fpdual/hmatrix.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fpdual/errors.hpp"

namespace fpdual {

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

HMatrix anti_transpose(const HMatrix& H) {
  HMatrix out = H;
  const int n = H.n;
  for (int k = 1; k <= n; ++k) {
    for (int j = 1; j <= k; ++j) {
      out.entries(k - 1, j - 1) = H.entries(n - j, n - k);
    }
  }
  return out;
}

Rational named_hmatrix_entry(FixedPointMethod method, int N, int k, int j) {
  if (k < 1 || j < 1 || j > k || k > N - 1) {
    throw ParameterError("named_hmatrix_entry: index out of range");
  }
  const long long Nk = N - k, Nj = N - j;
  switch (method) {
    case FixedPointMethod::kOhm:
      if (j == k) return {static_cast<long long>(k), static_cast<long long>(k) + 1};
      return {-static_cast<long long>(j),
              static_cast<long long>(k) * (static_cast<long long>(k) + 1)};
    case FixedPointMethod::kDualOhm:
      if (j == k) return {Nk, Nk + 1};
      return {-Nk, Nj * (Nj + 1)};
  }
  throw ParameterError("named_hmatrix_entry: unknown method");
}

HMatrix named_hmatrix(FixedPointMethod method, int N) {
  if (N < 2) throw ParameterError("named_hmatrix: N must be >= 2");
  HMatrix H;
  H.n = N - 1;
  H.scale = HMatrix::Scale::kFixedPoint;
  H.entries = DenseMatrix::Zero(N - 1, N - 1);
  for (int k = 1; k <= N - 1; ++k) {
    for (int j = 1; j <= k; ++j) {
      H.entries(k - 1, j - 1) = named_hmatrix_entry(method, N, k, j).value();
    }
  }
  return H;
}

HMatrix named_gradient_hmatrix(GradientMethod method, int N, double alpha_l) {
  if (N < 1) throw ParameterError("named_gradient_hmatrix: N must be >= 1");
  if (!(alpha_l > 0.0 && alpha_l <= 1.0)) {
    throw ParameterError("named_gradient_hmatrix: alpha*L must lie in (0, 1]");
  }
  HMatrix H;
  H.n = 2 * N;
  H.scale = HMatrix::Scale::kGradient;
  H.alpha_l = alpha_l;
  H.entries = DenseMatrix::Zero(2 * N, 2 * N);
  // Row l+1 updates x_{(l+1)/2}; column i+1 weights the gradient at x_{i/2}.
  for (int k = 0; k < N; ++k) {
    const int row_half = 2 * k;      // l = 2k: produces x_{k+1/2}
    const int row_full = 2 * k + 1;  // l = 2k+1: produces x_{k+1}
    if (method == GradientMethod::kFeg) {
      H.entries(row_half, 2 * k) = static_cast<double>(k) / (k + 1);
      for (int j = 0; j < k; ++j) {
        H.entries(row_half, 2 * j + 1) =
            -static_cast<double>(j + 1) / (static_cast<double>(k) * (k + 1));
      }
      H.entries(row_full, 2 * k + 1) = 1.0;
      H.entries(row_full, 2 * k) = -static_cast<double>(k) / (k + 1);
    } else {
      H.entries(row_half, 2 * k) = 1.0;
      for (int j = 0; j < k; ++j) {
        H.entries(row_half, 2 * j + 1) =
            -static_cast<double>(N - k) /
            (static_cast<double>(N - j - 1) * (N - j));
      }
      H.entries(row_full, 2 * k + 1) =
          static_cast<double>(N - k - 1) / (N - k);
      H.entries(row_full, 2 * k) =
          -static_cast<double>(N - k - 1) / (N - k);
    }
  }
  H.entries *= alpha_l;
  return H;
}

HMatrix composed_hmatrix(int N, int Nprime) {
  if (!(2 <= Nprime && Nprime <= N - 1)) {
    throw ParameterError("composed_hmatrix: need 2 <= Nprime <= N-1");
  }
  HMatrix H;
  H.n = N - 1;
  H.scale = HMatrix::Scale::kFixedPoint;
  H.entries = DenseMatrix::Zero(N - 1, N - 1);
  // First Nprime-1 rows: the Dual-OHM schedule with horizon Nprime.
  for (int k = 1; k <= Nprime - 1; ++k) {
    for (int j = 1; j <= k; ++j) {
      H.entries(k - 1, j - 1) =
          named_hmatrix_entry(FixedPointMethod::kDualOhm, Nprime, k, j).value();
    }
  }
  // Remaining rows follow the anchor update; rewriting y_0 - y_k through the
  // accumulated residual weights gives h_{k+1,j} = -(column sum so far)/(k+2).
  for (int k = Nprime - 1; k <= N - 2; ++k) {
    for (int j = 1; j <= k; ++j) {
      double colsum = 0.0;
      for (int i = j; i <= k; ++i) colsum += H.entries(i - 1, j - 1);
      H.entries(k, j - 1) = -colsum / (k + 2);
    }
    H.entries(k, k) = static_cast<double>(k + 1) / (k + 2);
  }
  return H;
}

Trace run_fp_hmatrix(const HMatrix& H, const NonexpansiveMap& T,
                     const DenseVector& y0) {
  if (H.scale != HMatrix::Scale::kFixedPoint) {
    throw ParameterError("run_fp_hmatrix: matrix is not fixed_point scaled");
  }
  if (y0.size() != T.dim) {
    throw ParameterError("run_fp_hmatrix: dimension mismatch");
  }
  const int steps = H.n;
  Trace trace;
  trace.method = "fp-hmatrix";
  trace.horizon = steps + 1;
  trace.iterates.reserve(steps + 1);
  trace.iterates.push_back(y0);
  std::vector<DenseVector> residuals;  // y_j - T y_j, evaluated once each
  residuals.reserve(steps + 1);
  MetricSeries res_sq;
  long calls = 0;
  for (int k = 0; k < steps; ++k) {
    const DenseVector& yk = trace.iterates.back();
    residuals.push_back(yk - T(yk));
    ++calls;
    res_sq.push(k, residuals.back().squaredNorm());
    DenseVector next = yk;
    for (int j = 0; j <= k; ++j) {
      next -= H(k + 1, j + 1) * residuals[j];
    }
    trace.iterates.push_back(std::move(next));
  }
  trace.evals = calls;
  // Terminal residual is a measurement, not part of the step budget.
  const DenseVector& last = trace.iterates.back();
  res_sq.push(steps, (last - T(last)).squaredNorm());
  ++calls;
  trace.eval_calls_total = calls;
  trace.metrics["residual_sq"] = std::move(res_sq);
  return trace;
}

Trace run_grad_hmatrix(const HMatrix& H, const SaddleProblem& P,
                       const DenseVector& x0, double L) {
  if (H.scale != HMatrix::Scale::kGradient) {
    throw ParameterError("run_grad_hmatrix: matrix is not gradient scaled");
  }
  if (L <= 0.0) throw ParameterError("run_grad_hmatrix: L must be positive");
  if (x0.size() != P.dim()) {
    throw ParameterError("run_grad_hmatrix: dimension mismatch");
  }
  if (H.n % 2 != 0) throw ParameterError("run_grad_hmatrix: odd matrix size");
  const int rows = H.n;
  Trace trace;
  trace.method = "grad-hmatrix";
  trace.horizon = rows / 2;
  std::vector<DenseVector> points;  // x_{i/2} at position i
  points.reserve(rows + 1);
  points.push_back(x0);
  std::vector<DenseVector> grads;  // A x_{i/2}, cached per position
  grads.reserve(rows + 1);
  MetricSeries grad_sq;
  long calls = 0;
  for (int l = 0; l < rows; ++l) {
    grads.push_back(P.grad(points[l]));
    ++calls;
    if (l % 2 == 0) grad_sq.push(l / 2, grads[l].squaredNorm());
    DenseVector next = points[l];
    for (int i = 0; i <= l; ++i) {
      next -= H(l + 1, i + 1) / L * grads[i];
    }
    points.push_back(std::move(next));
  }
  trace.evals = calls;
  grad_sq.push(rows / 2, P.grad(points[rows]).squaredNorm());
  ++calls;
  trace.eval_calls_total = calls;
  for (int i = 0; i <= rows; ++i) {
    if (i % 2 == 0) {
      trace.iterates.push_back(points[i]);
    } else {
      trace.half_iterates.push_back(points[i]);
    }
  }
  trace.metrics["grad_norm_sq"] = std::move(grad_sq);
  return trace;
}

void write_hmatrix_csv(const HMatrix& H, std::ostream& out) {
  out << H.n << ","
      << (H.scale == HMatrix::Scale::kFixedPoint ? "fixed_point" : "gradient")
      << "," << format_double(H.alpha_l) << "\n";
  for (int k = 1; k <= H.n; ++k) {
    for (int j = 1; j <= k; ++j) {
      if (j > 1) out << ",";
      out << format_double(H(k, j));
    }
    out << "\n";
  }
}

HMatrix read_hmatrix_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("hmatrix csv: empty input");
  std::istringstream header(line);
  std::string n_str, scale_str, alpha_str;
  if (!std::getline(header, n_str, ',') ||
      !std::getline(header, scale_str, ',') ||
      !std::getline(header, alpha_str, ',')) {
    throw ParseError("hmatrix csv: malformed header");
  }
  HMatrix H;
  H.n = std::stoi(n_str);
  if (H.n < 1) throw ParseError("hmatrix csv: bad size");
  if (scale_str == "fixed_point") {
    H.scale = HMatrix::Scale::kFixedPoint;
  } else if (scale_str == "gradient") {
    H.scale = HMatrix::Scale::kGradient;
  } else {
    throw ParseError("hmatrix csv: unknown scale tag '" + scale_str + "'");
  }
  H.alpha_l = std::stod(alpha_str);
  H.entries = DenseMatrix::Zero(H.n, H.n);
  for (int k = 1; k <= H.n; ++k) {
    if (!std::getline(in, line)) throw ParseError("hmatrix csv: truncated");
    std::istringstream row(line);
    std::string cell;
    for (int j = 1; j <= k; ++j) {
      if (!std::getline(row, cell, ',')) {
        throw ParseError("hmatrix csv: short row");
      }
      H.entries(k - 1, j - 1) = std::stod(cell);
    }
  }
  return H;
}

std::string hmatrix_json_dump(const HMatrix& H) {
  nlohmann::json j;
  j["n"] = H.n;
  j["scale"] =
      H.scale == HMatrix::Scale::kFixedPoint ? "fixed_point" : "gradient";
  if (H.scale == HMatrix::Scale::kGradient) j["alpha_l"] = H.alpha_l;
  nlohmann::json rows = nlohmann::json::array();
  for (int k = 1; k <= H.n; ++k) {
    nlohmann::json row = nlohmann::json::array();
    for (int jj = 1; jj <= k; ++jj) row.push_back(H(k, jj));
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j.dump(2);
}

std::string named_hmatrix_json_dump(FixedPointMethod method, int N) {
  nlohmann::json j;
  j["n"] = N - 1;
  j["scale"] = "fixed_point";
  j["method"] = method == FixedPointMethod::kOhm ? "ohm" : "dual-ohm";
  nlohmann::json rows = nlohmann::json::array();
  for (int k = 1; k <= N - 1; ++k) {
    nlohmann::json row = nlohmann::json::array();
    for (int jj = 1; jj <= k; ++jj) {
      row.push_back(named_hmatrix_entry(method, N, k, jj).str());
    }
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j.dump(2);
}

}  // namespace fpdual
