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

#ifndef FPDUAL_RNG_HPP_
#define FPDUAL_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

#include "fpdual/numerics.hpp"

namespace fpdual {

// Deterministic random source. The engine is std::mt19937_64 (its output
// sequence is pinned by the C++ standard) and the uniform/normal draws are
// derived with explicit formulas rather than std::*_distribution, whose
// algorithms are implementation-defined. Given a seed, every stream below is
// reproducible across compilers and platforms:
//   uniform(): ((x >> 11) + 0.5) * 2^-53              in (0, 1)
//   normal():  Box-Muller on two uniform draws, the sine mate is cached
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = kTwoPi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  std::uint64_t next_u64() { return engine_(); }

  DenseVector normal_vector(int dim) {
    DenseVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = normal();
    return v;
  }

  // Spherically uniform direction of unit norm.
  DenseVector unit_vector(int dim) {
    DenseVector v = normal_vector(dim);
    const double n = v.norm();
    return n > 0 ? DenseVector(v / n) : unit_vector(dim);
  }

  DenseMatrix normal_matrix(int rows, int cols) {
    DenseMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = normal();
    return m;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace fpdual

#endif  // FPDUAL_RNG_HPP_
