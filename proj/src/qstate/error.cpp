// Copyright 2024 The sqlab Authors
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

#include "sqlab/types.hpp"

namespace sqlab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::IndexOutOfRange: return "index-out-of-range";
    case ErrorKind::InvalidState: return "invalid-state";
    case ErrorKind::ZeroBranch: return "zero-branch";
    case ErrorKind::SizeLimit: return "size-limit";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message, double residual)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      residual_(residual) {}

}  // namespace sqlab
