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
#include <random>

#include "prodstate/tensor.hpp"

namespace prodstate {

using Rng = std::mt19937_64;

/// Generator for sub-stream `stream` of `seed`. Streams are derived by
/// splitmix64 mixing so probe i gets the same draws whether probes run in
/// order or not.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Unit vector, Haar-distributed (normalized complex Gaussian).
Vector haar_vector(int d, Rng& rng);

/// d x r matrix with orthonormal columns spanning a Haar-random r-dimensional
/// subspace (Gaussian columns orthonormalized by Householder QR).
Matrix haar_isometry(int d, int r, Rng& rng);

/// Random density matrix G G^dagger / tr with G a d x rank complex Gaussian.
Matrix random_density(int d, int rank, Rng& rng);

/// Random Hermitian matrix with Gaussian entries.
Matrix random_hermitian(int d, Rng& rng);

}  // namespace prodstate
