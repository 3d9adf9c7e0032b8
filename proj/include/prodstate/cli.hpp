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

#include <iosfwd>
#include <string>
#include <vector>

namespace prodstate::cli {

/// Exit codes. 0-4 are a stable contract; 5 and 6 separate I/O and syntax
/// failures of input files.
enum ExitCode : int {
  kOk = 0,
  kEntangled = 1,
  kUsage = 2,
  kValidation = 3,
  kNumerical = 4,
  kIo = 5,
  kParse = 6,
};

/// Runs one command line (args excludes the program name). Reports go to
/// `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prodstate::cli
