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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace prodstate {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Default absolute tolerance for state validation (Hermiticity, trace, PSD).
inline constexpr double kValidationTol = 1e-9;

/// Ordered factor dimensions of a tensor-product space.
///
/// Composite indices are row-major with factor 0 most significant: the basis
/// vector e_{a0} (x) e_{a1} (x) ... (x) e_{a(n-1)} sits at
///   a0*(d1*...*d(n-1)) + a1*(d2*...*d(n-1)) + ... + a(n-1).
/// Every other module and the file format rely on this layout.
class Dims {
 public:
  Dims() = default;
  explicit Dims(std::vector<int> factors);

  std::size_t size() const noexcept { return factors_.size(); }
  int operator[](std::size_t i) const { return factors_.at(i); }
  const std::vector<int>& factors() const noexcept { return factors_; }
  long total() const noexcept { return total_; }

  /// Distance in the composite index between consecutive values of factor i.
  long stride(std::size_t i) const { return strides_.at(i); }

  long composite_index(std::span<const int> multi) const;
  std::vector<int> multi_index(long composite) const;

  /// Dimensions of factors [begin, end).
  Dims slice(std::size_t begin, std::size_t end) const;
  /// Product of factor dimensions in [begin, end).
  long span_total(std::size_t begin, std::size_t end) const;

  friend bool operator==(const Dims&, const Dims&) = default;

 private:
  std::vector<int> factors_;
  std::vector<long> strides_;
  long total_ = 1;
};

/// A contiguous cut: left group = factors [0, cut), right group = [cut, n).
struct BipartiteSplit {
  int cut = 1;

  /// Throws DimensionError unless 1 <= cut < dims.size().
  static BipartiteSplit checked(int cut, const Dims& dims);

  long left_dim(const Dims& dims) const { return dims.span_total(0, cut); }
  long right_dim(const Dims& dims) const { return dims.span_total(cut, dims.size()); }
};

/// Complex amplitude vector over a factorized space. Only nonzero norm is
/// enforced here; operations that need a unit vector check it themselves.
class PureState {
 public:
  PureState(Dims dims, Vector amplitudes);

  const Dims& dims() const noexcept { return dims_; }
  const Vector& amplitudes() const noexcept { return amplitudes_; }
  double norm() const { return amplitudes_.norm(); }

  /// Product state phi_0 (x) phi_1 (x) ... from per-factor vectors.
  static PureState product(std::span<const Vector> factors);

 private:
  Dims dims_;
  Vector amplitudes_;
};

/// Hermitian, positive semidefinite, unit-trace matrix over a factorized space.
class MixedState {
 public:
  /// Validates all three invariants at absolute tolerance `tol`; throws
  /// ValidationError naming the first invariant that fails.
  MixedState(Dims dims, Matrix matrix, double tol = kValidationTol);

  const Dims& dims() const noexcept { return dims_; }
  const Matrix& matrix() const noexcept { return matrix_; }

  /// The rank-1 projector onto the normalized vector.
  static MixedState from_pure(const PureState& phi);
  static MixedState product(std::span<const Matrix> factors, double tol = kValidationTol);

 private:
  Dims dims_;
  Matrix matrix_;
};

/// Per-invariant deviations of a candidate density matrix.
struct StateDeviation {
  double hermiticity = 0.0;  // max |M - M^dagger|
  double trace = 0.0;        // |tr M - 1|
  double negativity = 0.0;   // max(0, -min eig((M + M^dagger)/2))
};
StateDeviation measure_deviation(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);
Matrix kron_all(std::span<const Matrix> ops);
Vector kron_all(std::span<const Vector> vecs);

/// 1 (x) ... (x) A (x) ... (x) 1 with A at factor position `factor`.
Matrix embed_local(const Matrix& a, std::size_t factor, const Dims& dims);

/// Reduced operator on the factors in `keep` (any order; result uses the
/// original factor order). Works for arbitrary square operators.
Matrix partial_trace(const Matrix& op, const Dims& dims, std::vector<std::size_t> keep);
MixedState partial_trace(const MixedState& rho, std::vector<std::size_t> keep);

double trace_norm(const Matrix& a);
/// Largest singular value.
double operator_norm(const Matrix& a);
Matrix hermitian_part(const Matrix& a);
double min_hermitian_eigenvalue(const Matrix& a);

/// Projector phi phi^dagger / |phi|^2.
Matrix outer_projector(const Vector& phi);

}  // namespace prodstate
