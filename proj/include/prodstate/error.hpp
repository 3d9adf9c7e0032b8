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

#include <stdexcept>
#include <string>

namespace prodstate {

/// Shapes or indices that do not fit the tensor-product layout.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A state or operator failed one of its invariants (norm, trace,
/// Hermiticity, positivity). Carries the name of the broken invariant and
/// the size of the deviation so callers can report it.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string invariant, double deviation, const std::string& what)
      : std::invalid_argument(what), invariant_(std::move(invariant)), deviation_(deviation) {}

  const std::string& invariant() const noexcept { return invariant_; }
  double deviation() const noexcept { return deviation_; }

 private:
  std::string invariant_;
  double deviation_;
};

/// A decomposition or solve that should not fail did.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state file could not be read.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state file is not well-formed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace prodstate
