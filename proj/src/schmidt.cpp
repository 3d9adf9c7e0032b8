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


#include "prodstate/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "prodstate/error.hpp"

namespace prodstate {

namespace {

std::size_t first_support(const Vector& v) {
  const double cutoff = 1e-10 * v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > cutoff) return static_cast<std::size_t>(i);
  return static_cast<std::size_t>(v.size());
}

// Phase of the largest-magnitude entry; near-ties go to the lowest index.
Complex dominant_phase(const Vector& v) {
  const double top = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= top * (1.0 - 1e-12)) return v(i) / std::abs(v(i));
  }
  return 1.0;
}

}  // namespace

Matrix coefficient_matrix(const PureState& phi, BipartiteSplit split) {
  const Dims& dims = phi.dims();
  split = BipartiteSplit::checked(split.cut, dims);
  const long rows = split.left_dim(dims);
  const long cols = split.right_dim(dims);
  // Row-major composite index: amplitude (a * cols + b) belongs to e_a (x) f_b.
  Matrix c(rows, cols);
  for (long a = 0; a < rows; ++a)
    for (long b = 0; b < cols; ++b) c(a, b) = phi.amplitudes()(a * cols + b);
  return c;
}

Vector apply_t_phi(const Matrix& coeff, const Vector& x) {
  if (x.size() != coeff.rows()) throw DimensionError("apply_t_phi: vector size mismatch");
  return coeff.transpose() * x.conjugate();
}

Vector apply_t_phi_adjoint(const Matrix& coeff, const Vector& y) {
  if (y.size() != coeff.cols()) throw DimensionError("apply_t_phi_adjoint: vector size mismatch");
  return coeff * y.conjugate();
}

SchmidtDecomposition schmidt_decompose(const PureState& phi, BipartiteSplit split, double tol) {
  const Matrix c = coefficient_matrix(phi, split);
  Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalError("schmidt_decompose: SVD failed");
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma.size() ? sigma(0) : 0.0;

  struct Term {
    double lambda;
    Vector left;
    Vector right;
  };
  std::vector<Term> terms;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (!(sigma(k) > tol * sigma_max) || sigma(k) == 0.0) continue;
    Vector e = svd.matrixU().col(k);
    Vector f = svd.matrixV().col(k).conjugate();
    const Complex ph = dominant_phase(e);
    e *= std::conj(ph);
    f *= ph;
    terms.push_back({sigma(k) * sigma(k), std::move(e), std::move(f)});
  }

  // JacobiSVD already sorts descending; reorder only within degenerate groups.
  const double group_tol = 1e-12 * (terms.empty() ? 1.0 : std::max(1.0, terms.front().lambda));
  for (std::size_t begin = 0; begin < terms.size();) {
    std::size_t end = begin + 1;
    while (end < terms.size() && terms[end - 1].lambda - terms[end].lambda <= group_tol) ++end;
    std::stable_sort(terms.begin() + begin, terms.begin() + end, [](const Term& a, const Term& b) {
      return first_support(a.left) < first_support(b.left);
    });
    begin = end;
  }

  SchmidtDecomposition sd{phi.dims(), BipartiteSplit::checked(split.cut, phi.dims()), {}, {}, {}};
  for (auto& t : terms) {
    sd.lambdas.push_back(t.lambda);
    sd.left_vectors.push_back(std::move(t.left));
    sd.right_vectors.push_back(std::move(t.right));
  }
  return sd;
}

int schmidt_rank(const PureState& phi, BipartiteSplit split, double tol) {
  return static_cast<int>(schmidt_decompose(phi, split, tol).rank());
}

PureState reconstruct(const SchmidtDecomposition& sd) {
  Vector out = Vector::Zero(sd.dims.total());
  for (std::size_t a = 0; a < sd.rank(); ++a)
    out += std::sqrt(sd.lambdas[a]) * kron(sd.left_vectors[a], sd.right_vectors[a]);
  return PureState(sd.dims, std::move(out));
}

}  // namespace prodstate
