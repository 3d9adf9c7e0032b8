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


#include "prodstate/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "prodstate/error.hpp"

namespace prodstate {

Dims::Dims(std::vector<int> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw DimensionError("Dims: at least one factor required");
  strides_.assign(factors_.size(), 1);
  total_ = 1;
  for (std::size_t k = factors_.size(); k-- > 0;) {
    if (factors_[k] < 1) throw DimensionError("Dims: factor dimensions must be >= 1");
    strides_[k] = total_;
    total_ *= factors_[k];
  }
}

long Dims::composite_index(std::span<const int> multi) const {
  if (multi.size() != factors_.size()) throw DimensionError("Dims: multi-index length mismatch");
  long idx = 0;
  for (std::size_t k = 0; k < multi.size(); ++k) {
    if (multi[k] < 0 || multi[k] >= factors_[k]) throw DimensionError("Dims: multi-index out of range");
    idx += multi[k] * strides_[k];
  }
  return idx;
}

std::vector<int> Dims::multi_index(long composite) const {
  if (composite < 0 || composite >= total_) throw DimensionError("Dims: composite index out of range");
  std::vector<int> multi(factors_.size());
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    multi[k] = static_cast<int>(composite / strides_[k]);
    composite %= strides_[k];
  }
  return multi;
}

Dims Dims::slice(std::size_t begin, std::size_t end) const {
  if (begin >= end || end > factors_.size()) throw DimensionError("Dims: invalid slice");
  return Dims(std::vector<int>(factors_.begin() + begin, factors_.begin() + end));
}

long Dims::span_total(std::size_t begin, std::size_t end) const {
  long t = 1;
  for (std::size_t k = begin; k < end && k < factors_.size(); ++k) t *= factors_[k];
  return t;
}

BipartiteSplit BipartiteSplit::checked(int cut, const Dims& dims) {
  if (cut < 1 || cut >= static_cast<int>(dims.size())) {
    std::ostringstream os;
    os << "invalid split: cut " << cut << " must lie in [1, " << dims.size() << ")";
    throw DimensionError(os.str());
  }
  return BipartiteSplit{cut};
}

PureState::PureState(Dims dims, Vector amplitudes) : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != dims_.total()) {
    throw DimensionError("PureState: amplitude count " + std::to_string(amplitudes_.size()) +
                         " does not match total dimension " + std::to_string(dims_.total()));
  }
  if (!amplitudes_.allFinite()) throw ValidationError("finite", 0.0, "PureState: non-finite amplitude");
  if (amplitudes_.norm() == 0.0) throw ValidationError("norm", 1.0, "PureState: zero vector");
}

PureState PureState::product(std::span<const Vector> factors) {
  std::vector<int> d;
  d.reserve(factors.size());
  for (const auto& f : factors) d.push_back(static_cast<int>(f.size()));
  return PureState(Dims(std::move(d)), kron_all(factors));
}

StateDeviation measure_deviation(const Matrix& m) {
  StateDeviation dev;
  dev.hermiticity = (m - m.adjoint()).cwiseAbs().maxCoeff();
  dev.trace = std::abs(m.trace() - Complex(1.0, 0.0));
  dev.negativity = std::max(0.0, -min_hermitian_eigenvalue(m));
  return dev;
}

MixedState::MixedState(Dims dims, Matrix matrix, double tol) : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != dims_.total() || matrix_.cols() != dims_.total()) {
    throw DimensionError("MixedState: matrix must be " + std::to_string(dims_.total()) + "x" +
                         std::to_string(dims_.total()));
  }
  if (!matrix_.allFinite()) throw ValidationError("finite", 0.0, "MixedState: non-finite entry");
  const StateDeviation dev = measure_deviation(matrix_);
  auto fail = [](const char* name, double d) {
    std::ostringstream os;
    os.precision(12);
    os << "MixedState: " << name << " invariant violated, deviation " << d;
    throw ValidationError(name, d, os.str());
  };
  if (dev.hermiticity > tol) fail("hermitian", dev.hermiticity);
  if (dev.trace > tol) fail("trace", dev.trace);
  if (dev.negativity > tol) fail("positive", dev.negativity);
}

MixedState MixedState::from_pure(const PureState& phi) {
  return MixedState(phi.dims(), outer_projector(phi.amplitudes()));
}

MixedState MixedState::product(std::span<const Matrix> factors, double tol) {
  std::vector<int> d;
  for (const auto& f : factors) d.push_back(static_cast<int>(f.rows()));
  return MixedState(Dims(std::move(d)), kron_all(factors), tol);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Matrix kron_all(std::span<const Matrix> ops) {
  Matrix out = Matrix::Identity(1, 1);
  for (const auto& op : ops) out = kron(out, op);
  return out;
}

Vector kron_all(std::span<const Vector> vecs) {
  Vector out = Vector::Ones(1);
  for (const auto& v : vecs) out = kron(out, v);
  return out;
}

Matrix embed_local(const Matrix& a, std::size_t factor, const Dims& dims) {
  if (factor >= dims.size()) throw DimensionError("embed_local: factor index out of range");
  if (a.rows() != dims[factor] || a.cols() != dims[factor]) {
    throw DimensionError("embed_local: operator side must equal factor dimension " +
                         std::to_string(dims[factor]));
  }
  const long before = dims.span_total(0, factor);
  const long after = dims.span_total(factor + 1, dims.size());
  return kron(kron(Matrix::Identity(before, before), a), Matrix::Identity(after, after));
}

namespace {

// Composite-index offsets of every multi-index restricted to `factors`,
// enumerated in row-major order over those factors.
std::vector<long> offsets_over(const Dims& dims, const std::vector<std::size_t>& factors) {
  std::vector<long> offsets{0};
  for (std::size_t f : factors) {
    std::vector<long> next;
    next.reserve(offsets.size() * dims[f]);
    for (long base : offsets)
      for (int a = 0; a < dims[f]; ++a) next.push_back(base + a * dims.stride(f));
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace

Matrix partial_trace(const Matrix& op, const Dims& dims, std::vector<std::size_t> keep) {
  if (keep.empty()) throw DimensionError("partial_trace: keep set is empty");
  if (op.rows() != dims.total() || op.cols() != dims.total()) throw DimensionError("partial_trace: shape mismatch");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.back() >= dims.size()) throw DimensionError("partial_trace: factor index out of range");

  std::vector<std::size_t> traced;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (!std::binary_search(keep.begin(), keep.end(), k)) traced.push_back(k);

  const auto kept = offsets_over(dims, keep);
  const auto summed = offsets_over(dims, traced);
  const auto n = static_cast<Eigen::Index>(kept.size());
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      Complex acc = 0.0;
      for (long t : summed) acc += op(kept[r] + t, kept[c] + t);
      out(r, c) = acc;
    }
  return out;
}

MixedState partial_trace(const MixedState& rho, std::vector<std::size_t> keep) {
  std::vector<int> kept_dims;
  {
    auto sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t k : sorted)
      if (k < rho.dims().size()) kept_dims.push_back(rho.dims()[k]);
  }
  Matrix reduced = partial_trace(rho.matrix(), rho.dims(), std::move(keep));
  // Summation error grows with the traced dimension; allow for it.
  const double tol = kValidationTol * static_cast<double>(rho.dims().total());
  return MixedState(Dims(std::move(kept_dims)), std::move(reduced), tol);
}

double trace_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

Matrix hermitian_part(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

double min_hermitian_eigenvalue(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Matrix outer_projector(const Vector& phi) {
  const double n2 = phi.squaredNorm();
  if (n2 == 0.0) throw ValidationError("norm", 1.0, "outer_projector: zero vector");
  return phi * phi.adjoint() / n2;
}

}  // namespace prodstate
