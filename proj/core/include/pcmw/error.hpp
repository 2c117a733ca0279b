// Copyright 2026 The pcm-weights Authors.
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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pcmw {

enum class ErrorCode {
  kNonPositiveEntry,
  kReciprocityViolation,
  kIndexOutOfRange,
  kDuplicateConflictingEntry,
  kParseError,
  kIoError,
  kDisconnectedGraph,
  kSolveFailure,
  kOverflow,
  kEdgeNotInPcm,
  kEmptyStream,
  kInvalidParameters,
};

std::string_view to_string(ErrorCode code) noexcept;

// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when an operation needs a connected comparison graph. Carries the
// 0-based nodes that cannot be reached from node 0.
class DisconnectedGraphError : public Error {
 public:
  explicit DisconnectedGraphError(std::vector<std::size_t> unreachable);

  const std::vector<std::size_t>& unreachable() const noexcept {
    return unreachable_;
  }

 private:
  std::vector<std::size_t> unreachable_;
};

}  // namespace pcmw
