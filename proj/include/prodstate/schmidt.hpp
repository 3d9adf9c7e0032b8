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


#pragma once

#include <vector>

#include "prodstate/tensor.hpp"

namespace prodstate {

inline constexpr double kRankTol = 1e-10;

/// Phi = sum_a sqrt(lambda_a) e_a (x) f_a across a contiguous cut.
struct SchmidtDecomposition {
  Dims dims;
  BipartiteSplit split;
  std::vector<double> lambdas;       // descending, all positive
  std::vector<Vector> left_vectors;  // orthonormal, on factors [0, cut)
  std::vector<Vector> right_vectors; // orthonormal, on factors [cut, n)

  std::size_t rank() const noexcept { return lambdas.size(); }
};

/// Reshape of the amplitudes into a (left dim) x (right dim) matrix C with
/// C(a, b) the amplitude of e_a (x) f_b. It is the matrix of the
/// conjugate-linear map T_Phi in product bases: T_Phi(e_a) = sum_b C(a, b) f_b.
Matrix coefficient_matrix(const PureState& phi, BipartiteSplit split);

/// T_Phi(x) = C^T conj(x): left group -> right group, conjugate-linear.
Vector apply_t_phi(const Matrix& coeff, const Vector& x);
/// T^Phi(y) = C conj(y): right group -> left group, conjugate-linear.
Vector apply_t_phi_adjoint(const Matrix& coeff, const Vector& y);

/// SVD of the coefficient matrix, lambda = sigma^2, dropping sigma below
/// tol * sigma_max. Each left vector is rotated so its largest-magnitude
/// component is real positive; the inverse phase goes into its right partner.
/// Equal lambdas are ordered by the first support index of the left vector.
SchmidtDecomposition schmidt_decompose(const PureState& phi, BipartiteSplit split, double tol = kRankTol);

int schmidt_rank(const PureState& phi, BipartiteSplit split, double tol = kRankTol);

/// sum_a sqrt(lambda_a) e_a (x) f_a. Throws ValidationError for an empty
/// decomposition (the zero vector is not a state).
PureState reconstruct(const SchmidtDecomposition& sd);

}  // namespace prodstate
