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

#include "pcmw/error.hpp"

#include <utility>

namespace pcmw {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kNonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::kReciprocityViolation: return "ReciprocityViolation";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kDuplicateConflictingEntry: return "DuplicateConflictingEntry";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kDisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::kSolveFailure: return "SolveFailure";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kEdgeNotInPcm: return "EdgeNotInPcm";
    case ErrorCode::kEmptyStream: return "EmptyStream";
    case ErrorCode::kInvalidParameters: return "InvalidParameters";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

namespace {

std::string describe_unreachable(const std::vector<std::size_t>& nodes) {
  std::string s = "comparison graph is disconnected; nodes {";
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (k > 0) s += ", ";
    s += std::to_string(nodes[k] + 1);
  }
  s += "} are unreachable from node 1";
  return s;
}

}  // namespace

DisconnectedGraphError::DisconnectedGraphError(
    std::vector<std::size_t> unreachable)
    : Error(ErrorCode::kDisconnectedGraph, describe_unreachable(unreachable)),
      unreachable_(std::move(unreachable)) {}

}  // namespace pcmw
