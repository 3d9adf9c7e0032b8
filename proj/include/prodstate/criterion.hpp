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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "prodstate/tensor.hpp"

namespace prodstate {

/// Default decision tolerance: a cut counts as product when the Schmidt
/// weight outside the leading term is at most this (absolute, on lambda).
inline constexpr double kDecisionTol = 1e-8;
/// Criterion entry points reject states whose norm (pure) deviates from 1 by
/// more than this instead of renormalizing them.
inline constexpr double kUnitTol = 1e-6;
inline constexpr long kDefaultGridCap = 4096;
/// Probability that a mixed-state probe uses the identity on a factor.
inline constexpr double kIdentityProbability = 0.2;

/// Grid tuple cap, overridable through PRODSTATE_GRID_CAP.
long default_grid_cap();

/// Orthogonal projector onto the line through a unit vector.
struct Rank1Projector {
  std::size_t factor = 0;
  Vector unit;

  Matrix matrix() const { return unit * unit.adjoint(); }
};

/// Normalizes v; throws ValidationError for the zero vector.
Rank1Projector rank1_projector(std::size_t factor, const Vector& v);

/// Orthogonal projector on one factor, stored by an orthonormal basis of its
/// range, or the identity marker.
class Projector {
 public:
  /// Columns of `range` must be orthonormal within 1e-10.
  Projector(std::size_t factor, Matrix range);
  static Projector identity(std::size_t factor, int dim);
  static Projector from(const Rank1Projector& p) { return Projector(p.factor, p.unit); }

  std::size_t factor() const noexcept { return factor_; }
  bool is_identity() const noexcept { return identity_; }
  int dim() const noexcept { return dim_; }
  int rank() const noexcept { return identity_ ? dim_ : static_cast<int>(range_.cols()); }
  /// d x r orthonormal columns (the identity's columns for the marker).
  const Matrix& range() const noexcept { return range_; }
  Matrix matrix() const;

 private:
  Projector() = default;
  std::size_t factor_ = 0;
  int dim_ = 0;
  bool identity_ = false;
  Matrix range_;
};

struct ViolationReport {
  double max_violation = 0.0;
  std::vector<Projector> witness;  // one per factor, empty if nothing evaluated
  long probes_evaluated = 0;
  std::uint64_t seed = 0;
};

struct ProductVerdict {
  bool is_product = false;
  std::vector<Vector> pure_factors;   // pure input, when product
  std::vector<Matrix> mixed_factors;  // mixed input, when product
  /// |Phi - (x) phi_i| for pure input, trace norm |rho - (x) rho_i| for mixed.
  double residual = 0.0;
  /// Cut (number of leading factors on the left) where factorization failed;
  /// 0 when product.
  int failed_cut = 0;
  /// Condition violation of the two-group witness at the failed cut.
  double cut_violation = 0.0;
  /// Schmidt lambdas (pure) or operator Schmidt coefficients (mixed) there.
  std::vector<double> cut_spectrum;
  std::optional<ViolationReport> witness;
};

/// e_j, then (e_j + e_k)/sqrt2 for j < k, then (e_j + i e_k)/sqrt2 for j < k.
/// The d^2 projectors onto these lines span all d x d matrices.
std::vector<Vector> projector_basis(int d);

/// Coefficients c with sum_k c_k P_k = A over projector_basis(d).
Vector expand_in_projector_basis(const Matrix& a, int d);

/// |<Phi, (P_1 (x) ... (x) P_n) Phi> - prod_i <Phi, Pbar_i Phi>|. One
/// projector per factor, in factor order.
double pure_condition_violation(const PureState& phi, std::span<const Rank1Projector> ps);

/// |tr[(P_1 (x) ... (x) P_n) rho] - prod_i tr[Pbar_i rho]|. Identity markers
/// are rejected unless allow_identity is set.
double mixed_condition_violation(const MixedState& rho, std::span<const Projector> ps, bool allow_identity = true);

/// Peels one factor at a time through the leading Schmidt term of the
/// 1 | rest cut of the remaining tail. Stops at the first cut whose leftover
/// weight exceeds tol and builds a per-factor witness from the leading
/// Schmidt vectors there.
ProductVerdict check_pure_product(const PureState& phi, double tol = kDecisionTol);

/// Mixed counterpart using the Hermitian operator Schmidt decomposition.
/// On rank one the sign of (A_1, B_1) is fixed so that tr A_1 > 0 and both
/// are scaled to unit trace.
ProductVerdict check_mixed_product(const MixedState& rho, double tol = kDecisionTol);

struct ProbeOptions {
  long n_probes = 1000;
  std::uint64_t seed = 0;
  bool include_grid = true;
  long grid_cap = kDefaultGridCap;
};

/// Randomized (plus, under the cap, exhaustive basis-grid) search for the
/// largest condition violation. Deterministic given the options.
ViolationReport probe_condition(const PureState& phi, const ProbeOptions& opts);
ViolationReport probe_condition(const MixedState& rho, const ProbeOptions& opts);

struct SubsetViolation {
  std::vector<std::size_t> subset;  // zero-based factor indices, ascending
  double max_violation = 0.0;
  std::vector<Projector> witness;
};

/// For every subset of at least two factors, the condition with rank-1
/// projectors on the subset and the identity elsewhere. Subsets are listed
/// by size, then lexicographically.
std::vector<SubsetViolation> check_weakened_condition(const MixedState& rho, long probes_per_subset,
                                                      std::uint64_t seed, long grid_cap = kDefaultGridCap);

}  // namespace prodstate
