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
#include <vector>

#include "prodstate/criterion.hpp"
#include "prodstate/tensor.hpp"

namespace prodstate {

// Brute-force references. None of these go through the Schmidt machinery.

struct PureOracleResult {
  bool is_product = false;
  std::vector<Vector> best_product;  // unit vectors, one per factor
  double overlap = 0.0;              // |<Phi, (x) phi_i>|
  int iterations = 0;
};

/// Alternating rank-one fit of a unit vector. Starts from the top eigenvector
/// of each one-factor reduced state; when some start is degenerate (gap below
/// 1e-8) it also tries three seeded random starts and keeps the best.
PureOracleResult oracle_pure_product(const PureState& phi, double tol = kDecisionTol, int max_iters = 500);

struct MixedOracleResult {
  bool is_product = false;
  double distance = 0.0;         // trace norm of rho - (x) marginals
  std::vector<Matrix> marginals;
};

/// A state is a product exactly when it equals the product of its marginals.
MixedOracleResult oracle_mixed_product(const MixedState& rho, double tol = kDecisionTol);

/// Exhaustive evaluation over projector_basis tuples (plus identity markers
/// for mixed states) using explicit Kronecker products. Throws DimensionError
/// when the tuple count exceeds cap.
ViolationReport oracle_condition_grid(const PureState& phi, long cap = kDefaultGridCap);
ViolationReport oracle_condition_grid(const MixedState& rho, long cap = kDefaultGridCap);

}  // namespace prodstate
