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

#include "prodstate/schmidt.hpp"
#include "prodstate/tensor.hpp"

namespace prodstate {

/// R = sum_i s_i A_i (x) B_i with {A_i}, {B_i} orthonormal under hs_inner.
struct OperatorSchmidtDecomposition {
  Dims dims;
  BipartiteSplit split;
  std::vector<double> coefficients;  // s_i = sqrt(lambda_i), descending
  std::vector<Matrix> left_ops;
  std::vector<Matrix> right_ops;
  bool hermitian = false;  // every A_i, B_i Hermitian when set

  std::size_t rank() const noexcept { return coefficients.size(); }
};

/// Hilbert-Schmidt inner product tr[A^dagger B] (conjugate-linear in A).
Complex hs_inner(const Matrix& a, const Matrix& b);

/// d^2 Hermitian matrices orthonormal under hs_inner: the diagonal units
/// E_jj, then (E_jk + E_kj)/sqrt2 and i(E_jk - E_kj)/sqrt2 for j < k.
std::vector<Matrix> hermitian_basis(int d);

/// Realigns R so that it becomes a (dL^2 x dR^2) matrix M with
///   M(a*dL + b, c*dR + d) = R(a*dR + c, b*dR + d),
/// i.e. R = sum M(ab, cd) E_ab (x) E_cd. Row index pairs a left-group
/// row/column, column index pairs a right-group row/column.
Matrix reshuffle(const Matrix& r, long left_dim, long right_dim);
/// Inverse of reshuffle.
Matrix unreshuffle(const Matrix& m, long left_dim, long right_dim);

/// Operator Schmidt decomposition across `split`. With `hermitian` set the
/// SVD runs over the real space of Hermitian matrices (coordinates in
/// hermitian_basis), so every A_i and B_i is Hermitian; R must then be
/// Hermitian. Coefficients below tol * s_max are dropped.
OperatorSchmidtDecomposition operator_schmidt_decompose(const Matrix& r, const Dims& dims, BipartiteSplit split,
                                                        double tol = kRankTol, bool hermitian = false);

int operator_schmidt_rank(const Matrix& r, const Dims& dims, BipartiteSplit split, double tol = kRankTol);

/// sum_i s_i A_i (x) B_i.
Matrix reconstruct(const OperatorSchmidtDecomposition& osd);

}  // namespace prodstate
