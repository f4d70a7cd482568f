// Copyright 2026 The polyfeas Authors
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

#include "polyfeas/error.hpp"

#include <array>

#include "polyfeas/types.hpp"

namespace polyfeas {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch:
      return "dimension-mismatch";
    case ErrorCode::kOutOfRange:
      return "out-of-range";
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
    case ErrorCode::kInfeasibleConstraint:
      return "infeasible-constraint";
    case ErrorCode::kPrecondition:
      return "precondition";
    case ErrorCode::kUnsupported:
      return "unsupported";
    case ErrorCode::kParse:
      return "parse";
    case ErrorCode::kIo:
      return "io";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(to_string(code)) + ": " + message);
}

Rng derive_stream(std::uint64_t base_seed, std::uint64_t index) {
  std::array<std::uint32_t, 4> words = {
      static_cast<std::uint32_t>(base_seed), static_cast<std::uint32_t>(base_seed >> 32),
      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

}  // namespace polyfeas
