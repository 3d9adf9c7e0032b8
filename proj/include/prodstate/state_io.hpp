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

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "prodstate/measurement.hpp"
#include "prodstate/tensor.hpp"

namespace prodstate {

using AnyState = std::variant<PureState, MixedState>;

/// Tolerance applied to unit norm / trace / Hermiticity / PSD when loading.
inline constexpr double kLoadTol = 1e-6;

// State files are JSON objects with exactly these fields:
//   {"kind": "pure",  "dims": [2,2], "data": [[re,im], ...]}        amplitudes
//   {"kind": "mixed", "dims": [2,2], "data": [[[re,im], ...], ...]}  rows
// Amplitudes and rows follow the composite-index order of Dims.

AnyState parse_state(const std::string& text);
AnyState load_state(const std::filesystem::path& path);

/// Canonical single-line encoding; parse_state(format_state(s)) reproduces s
/// exactly, and format_state is a fixed point on its own output.
std::string format_state(const AnyState& state);
void save_state(const AnyState& state, const std::filesystem::path& path);

/// {"kind": "observables", "dims": [...], "data": [matrix, matrix, ...]},
/// one Hermitian matrix (rows of [re,im]) per factor.
std::vector<Observable> parse_observables(const std::string& text, const Dims& expected);
std::vector<Observable> load_observables(const std::filesystem::path& path, const Dims& expected);

}  // namespace prodstate
