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


#include "prodstate/random.hpp"

namespace prodstate {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Matrix gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

}  // namespace

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  return Rng(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x5851f42d4c957f2dULL)));
}

Vector haar_vector(int d, Rng& rng) {
  Vector v = gaussian(d, 1, rng).col(0);
  return v / v.norm();
}

Matrix haar_isometry(int d, int r, Rng& rng) {
  const Matrix g = gaussian(d, r, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, r);
  // Fix the phase freedom of QR so the distribution is exactly Haar.
  const Matrix rr = qr.matrixQR().topRows(r).template triangularView<Eigen::Upper>();
  for (int j = 0; j < r; ++j) {
    const double mag = std::abs(rr(j, j));
    if (mag > 0.0) q.col(j) *= rr(j, j) / mag;
  }
  return q;
}

Matrix random_density(int d, int rank, Rng& rng) {
  const Matrix g = gaussian(d, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

Matrix random_hermitian(int d, Rng& rng) { return hermitian_part(gaussian(d, d, rng)); }

}  // namespace prodstate
