// Copyright 2026 The btcheck Authors.
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

#ifndef BTCHECK_ERROR_HPP_
#define BTCHECK_ERROR_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace btcheck {

enum class ErrorCode {
  kDuplicatePair,
  kMissingPair,
  kOutOfRangeProbability,
  kSelfLoop,
  kVertexOutOfRange,
  kDimensionMismatch,
  kDegenerateCycle,
  kNotASpanningTree,
  kTooFewVertices,
  kOutOfRange,
  kPreconditionFailed,
  kTooLarge,
  kParseError,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception. Parse failures
// and record-level validation failures carry the 1-based input line.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const { return code_; }
  std::optional<std::size_t> line() const { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

}  // namespace btcheck

#endif  // BTCHECK_ERROR_HPP_
