// Copyright 2026 The prodstate Authors
//
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


// Shared states and generators for the test suites.

#pragma once

#include <cmath>
#include <vector>

#include "prodstate/random.hpp"
#include "prodstate/tensor.hpp"

namespace prodstate::testing {

inline const Complex kI{0.0, 1.0};
inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

inline Vector ket(std::initializer_list<Complex> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (Complex x : xs) v(i++) = x;
  return v;
}

inline Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Matrix pauli_x() { return mat2(0, 1, 1, 0); }
inline Matrix pauli_y() { return mat2(0, -kI, kI, 0); }
inline Matrix pauli_z() { return mat2(1, 0, 0, -1); }
inline Matrix proj0() { return mat2(1, 0, 0, 0); }
inline Matrix proj1() { return mat2(0, 0, 0, 1); }

inline PureState bell() { return PureState(Dims({2, 2}), ket({kInvSqrt2, 0, 0, kInvSqrt2})); }

inline PureState ghz(int n = 3) {
  Vector v = Vector::Zero(1L << n);
  v(0) = v((1L << n) - 1) = kInvSqrt2;
  return PureState(Dims(std::vector<int>(n, 2)), v);
}

inline PureState w_state() {
  Vector v = Vector::Zero(8);
  v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
  return PureState(Dims({2, 2, 2}), v);
}

/// (P0 (x) P0 + P1 (x) P1) / 2: classically correlated, separable, not product.
inline MixedState classical_correlated() {
  return MixedState(Dims({2, 2}), 0.5 * (kron(proj0(), proj0()) + kron(proj1(), proj1())));
}

inline MixedState bell_projector() { return MixedState::from_pure(bell()); }

inline std::vector<int> random_dims(Rng& rng, int max_factors, int min_d, int max_d, int min_factors = 2) {
  std::uniform_int_distribution<int> nf(min_factors, max_factors);
  std::uniform_int_distribution<int> dd(min_d, max_d);
  std::vector<int> dims(static_cast<std::size_t>(nf(rng)));
  for (auto& d : dims) d = dd(rng);
  return dims;
}

inline PureState random_pure(const std::vector<int>& dims, Rng& rng) {
  long total = 1;
  for (int d : dims) total *= d;
  return PureState(Dims(dims), haar_vector(static_cast<int>(total), rng));
}

inline PureState random_product_pure(const std::vector<int>& dims, Rng& rng) {
  std::vector<Vector> fs;
  for (int d : dims) fs.push_back(haar_vector(d, rng));
  return PureState::product(fs);
}

inline std::vector<Matrix> random_marginals(const std::vector<int>& dims, Rng& rng) {
  std::vector<Matrix> fs;
  for (int d : dims) {
    std::uniform_int_distribution<int> rk(1, d);
    fs.push_back(random_density(d, rk(rng), rng));
  }
  return fs;
}

inline MixedState random_product_mixed(const std::vector<int>& dims, Rng& rng) {
  return MixedState::product(random_marginals(dims, rng));
}

inline MixedState random_mixed(const std::vector<int>& dims, Rng& rng) {
  long total = 1;
  for (int d : dims) total *= d;
  std::uniform_int_distribution<int> rk(1, static_cast<int>(total));
  return MixedState(Dims(dims), random_density(static_cast<int>(total), rk(rng), rng));
}

inline Matrix random_complex(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = g(rng);
      m(i, j) = Complex(re, g(rng));
    }
  return m;
}

/// |<a, b>| = 1 within tol, i.e. equal up to a global phase.
inline double phase_distance(const Vector& a, const Vector& b) {
  const Complex ov = a.dot(b);
  const Complex ph = std::abs(ov) > 0 ? ov / std::abs(ov) : Complex(1.0);
  return (a * ph - b).norm();
}

}  // namespace prodstate::testing
