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
#include <span>
#include <vector>

#include "prodstate/tensor.hpp"

namespace prodstate {

inline constexpr double kClusterTol = 1e-8;

/// Bounded observable of one subsystem.
struct Observable {
  std::size_t factor = 0;
  Matrix matrix;  // Hermitian, side = dimension of `factor`
};

/// Finite spectral measure: distinct eigenvalues with their projectors.
struct SpectralMeasure {
  std::vector<double> values;      // strictly increasing
  std::vector<Matrix> projectors;  // E({values[k]})
};

/// Outcome probabilities p(a_1, ..., a_n) = tr[(E_1({a_1}) (x) ... ) rho].
struct JointDistribution {
  std::vector<std::vector<double>> outcomes;  // per factor
  std::vector<double> table;                  // row-major over outcome indices

  std::size_t factors() const noexcept { return outcomes.size(); }
  std::vector<double> marginal(std::size_t factor) const;
  double at(std::span<const int> outcome_index) const;
};

/// Eigenvalues closer than cluster_tol * (1 + |lambda|) share one projector;
/// the reported value is the cluster mean.
SpectralMeasure spectral_measure(const Observable& obs, double cluster_tol = kClusterTol);

/// One observable per factor, in factor order.
JointDistribution joint_distribution(const MixedState& rho, std::span<const Observable> obs);

/// max over outcomes of |p(a) - prod_i p_i(a_i)|.
double independence_violation(const JointDistribution& jd);

/// n i.i.d. outcome tuples (values, not indices), inverse CDF over the
/// flattened table. Deterministic given seed.
std::vector<std::vector<double>> sample_outcomes(const MixedState& rho, std::span<const Observable> obs, long n,
                                                 std::uint64_t seed);

}  // namespace prodstate
