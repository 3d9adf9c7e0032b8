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


#include "prodstate/op_schmidt.hpp"

#include <cmath>

#include "prodstate/error.hpp"

namespace prodstate {

Complex hs_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("hs_inner: shape mismatch");
  // tr[A^dagger B] = sum_ij conj(A_ij) B_ij
  return (a.conjugate().cwiseProduct(b)).sum();
}

std::vector<Matrix> hermitian_basis(int d) {
  std::vector<Matrix> basis;
  basis.reserve(static_cast<std::size_t>(d) * d);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j) {
    Matrix e = Matrix::Zero(d, d);
    e(j, j) = 1.0;
    basis.push_back(std::move(e));
  }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      Matrix sym = Matrix::Zero(d, d);
      sym(j, k) = sym(k, j) = inv_sqrt2;
      basis.push_back(std::move(sym));
      Matrix anti = Matrix::Zero(d, d);
      anti(j, k) = Complex(0.0, inv_sqrt2);
      anti(k, j) = Complex(0.0, -inv_sqrt2);
      basis.push_back(std::move(anti));
    }
  return basis;
}

Matrix reshuffle(const Matrix& r, long left_dim, long right_dim) {
  if (r.rows() != left_dim * right_dim || r.cols() != left_dim * right_dim)
    throw DimensionError("reshuffle: operator side must equal left_dim * right_dim");
  Matrix m(left_dim * left_dim, right_dim * right_dim);
  for (long a = 0; a < left_dim; ++a)
    for (long b = 0; b < left_dim; ++b)
      for (long c = 0; c < right_dim; ++c)
        for (long d = 0; d < right_dim; ++d) m(a * left_dim + b, c * right_dim + d) = r(a * right_dim + c, b * right_dim + d);
  return m;
}

Matrix unreshuffle(const Matrix& m, long left_dim, long right_dim) {
  if (m.rows() != left_dim * left_dim || m.cols() != right_dim * right_dim)
    throw DimensionError("unreshuffle: shape mismatch");
  Matrix r(left_dim * right_dim, left_dim * right_dim);
  for (long a = 0; a < left_dim; ++a)
    for (long b = 0; b < left_dim; ++b)
      for (long c = 0; c < right_dim; ++c)
        for (long d = 0; d < right_dim; ++d) r(a * right_dim + c, b * right_dim + d) = m(a * left_dim + b, c * right_dim + d);
  return r;
}

namespace {

Matrix as_square(const Eigen::Ref<const Vector>& v, long side) {
  Matrix out(side, side);
  for (long a = 0; a < side; ++a)
    for (long b = 0; b < side; ++b) out(a, b) = v(a * side + b);
  return out;
}

// Columns are the row-major flattening of each basis matrix.
Matrix basis_columns(const std::vector<Matrix>& basis, long side) {
  Matrix cols(side * side, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (long a = 0; a < side; ++a)
      for (long b = 0; b < side; ++b) cols(a * side + b, static_cast<Eigen::Index>(k)) = basis[k](a, b);
  return cols;
}

void check_square(const Matrix& r, const Dims& dims) {
  if (r.rows() != r.cols()) throw DimensionError("operator_schmidt_decompose: operator is not square");
  if (r.rows() != dims.total())
    throw DimensionError("operator_schmidt_decompose: operator side does not match dims");
}

}  // namespace

OperatorSchmidtDecomposition operator_schmidt_decompose(const Matrix& r, const Dims& dims, BipartiteSplit split,
                                                        double tol, bool hermitian) {
  check_square(r, dims);
  split = BipartiteSplit::checked(split.cut, dims);
  const long dl = split.left_dim(dims);
  const long dr = split.right_dim(dims);
  const Matrix m = reshuffle(r, dl, dr);

  OperatorSchmidtDecomposition out{dims, split, {}, {}, {}, hermitian};

  if (!hermitian) {
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw NumericalError("operator_schmidt_decompose: SVD failed");
    const auto& s = svd.singularValues();
    const double s_max = s.size() ? s(0) : 0.0;
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      if (!(s(k) > tol * s_max) || s(k) == 0.0) continue;
      Vector u = svd.matrixU().col(k);
      Vector v = svd.matrixV().col(k).conjugate();
      Eigen::Index top = 0;
      u.cwiseAbs().maxCoeff(&top);
      const Complex ph = u(top) / std::abs(u(top));
      u *= std::conj(ph);
      v *= ph;
      out.coefficients.push_back(s(k));
      out.left_ops.push_back(as_square(u, dl));
      out.right_ops.push_back(as_square(v, dr));
    }
    return out;
  }

  const double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
  const double asym = (r - r.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kValidationTol * scale)
    throw ValidationError("hermitian", asym, "operator_schmidt_decompose: hermitian variant needs a Hermitian operator");

  const auto left_basis = hermitian_basis(static_cast<int>(dl));
  const auto right_basis = hermitian_basis(static_cast<int>(dr));
  const Matrix gl = basis_columns(left_basis, dl);
  const Matrix gr = basis_columns(right_basis, dr);
  // T(k, l) = hs_inner(G_k (x) H_l, R), real for Hermitian R.
  const Eigen::MatrixXd t = (gl.adjoint() * m * gr.conjugate()).real();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalError("operator_schmidt_decompose: SVD failed");
  const auto& s = svd.singularValues();
  const double s_max = s.size() ? s(0) : 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (!(s(k) > tol * s_max) || s(k) == 0.0) continue;
    Eigen::VectorXd u = svd.matrixU().col(k);
    Eigen::VectorXd v = svd.matrixV().col(k);
    Eigen::Index top = 0;
    u.cwiseAbs().maxCoeff(&top);
    if (u(top) < 0) {
      u = -u;
      v = -v;
    }
    const Vector a = gl * u.cast<Complex>();
    const Vector b = gr * v.cast<Complex>();
    out.coefficients.push_back(s(k));
    out.left_ops.push_back(hermitian_part(as_square(a, dl)));
    out.right_ops.push_back(hermitian_part(as_square(b, dr)));
  }
  return out;
}

int operator_schmidt_rank(const Matrix& r, const Dims& dims, BipartiteSplit split, double tol) {
  return static_cast<int>(operator_schmidt_decompose(r, dims, split, tol, false).rank());
}

Matrix reconstruct(const OperatorSchmidtDecomposition& osd) {
  Matrix out = Matrix::Zero(osd.dims.total(), osd.dims.total());
  for (std::size_t i = 0; i < osd.rank(); ++i) out += osd.coefficients[i] * kron(osd.left_ops[i], osd.right_ops[i]);
  return out;
}

}  // namespace prodstate
