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
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace pcmw {

/// Node indices are 0-based throughout the C++ API. File formats and the
/// command line use 1-based indices and convert at the boundary.
using NodeId = std::size_t;

/// One known comparison in canonical form: i < j, value = a_ij, log_value =
/// ln a_ij. The reciprocal a_ji = 1 / a_ij is derived, never stored.
struct Comparison {
  NodeId i;
  NodeId j;
  double value;
  double log_value;

  friend bool operator==(const Comparison&, const Comparison&) = default;
};

/// An unvalidated matrix entry as read from input.
struct RawEntry {
  NodeId i;
  NodeId j;
  double value;
};

/// Relative tolerance applied to user-supplied reciprocal pairs.
inline constexpr double kInputReciprocityTolerance = 1e-9;
/// Relative tolerance for diagonal entries, duplicates and normalization.
inline constexpr double kInternalTolerance = 1e-12;

/// Reciprocal positive matrix with optional off-diagonal entries.
///
/// Immutable once constructed by validate(). Only the upper triangle is
/// stored, so a_ij * a_ji == 1 holds exactly for every known pair.
class IncompletePCM {
 public:
  std::size_t size() const noexcept { return n_; }

  /// Known comparisons ordered lexicographically by (i, j), i < j.
  std::span<const Comparison> comparisons() const noexcept {
    return comparisons_;
  }
  std::size_t comparison_count() const noexcept { return comparisons_.size(); }

  bool known(NodeId i, NodeId j) const;
  /// a_ij for any ordered known pair; std::nullopt if missing. a_ii = 1.
  std::optional<double> value(NodeId i, NodeId j) const;
  /// b_ij = ln a_ij for an ordered known pair (antisymmetric).
  std::optional<double> log_value(NodeId i, NodeId j) const;

  /// The canonical entry list, suitable for feeding back into validate().
  std::vector<RawEntry> entries() const;

  friend bool operator==(const IncompletePCM& a, const IncompletePCM& b) {
    return a.n_ == b.n_ && a.comparisons_ == b.comparisons_;
  }

 private:
  friend IncompletePCM validate(std::size_t n, std::span<const RawEntry>);

  std::size_t n_ = 0;
  std::vector<Comparison> comparisons_;
  // n*n lookup into comparisons_, -1 where unknown.
  std::vector<int> index_;
};

/// Checks and canonicalizes raw entries.
///
/// Accepts either orientation of each pair. If both (i,j) and (j,i) are
/// present they must multiply to 1 within kInputReciprocityTolerance; the
/// i<j value wins. Diagonal entries must equal 1 and are dropped.
///
/// Throws Error with kIndexOutOfRange, kNonPositiveEntry,
/// kReciprocityViolation, kDuplicateConflictingEntry or kInvalidParameters.
IncompletePCM validate(std::size_t n, std::span<const RawEntry> entries);

enum class Normalization {
  kFirstOne,    // w_1 = 1
  kSumOne,      // sum w_i = 1
  kProductOne,  // prod w_i = 1
};

inline constexpr Normalization kDefaultNormalization = Normalization::kProductOne;

std::string_view to_string(Normalization norm) noexcept;
/// Parses the command line spellings first1, sum1 and prod1.
std::optional<Normalization> parse_normalization(std::string_view text);

/// Strictly positive weights under a declared normalization.
class WeightVector {
 public:
  /// Throws Error(kInvalidParameters) if a component is not finite and
  /// positive or the normalization does not hold to kInternalTolerance.
  WeightVector(std::vector<double> weights, Normalization norm);

  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t k) const { return w_[k]; }
  std::span<const double> values() const noexcept { return w_; }
  Normalization normalization() const noexcept { return norm_; }

 private:
  std::vector<double> w_;
  Normalization norm_;
};

/// Elementwise natural logarithm of a weight vector, up to an additive
/// constant.
class LogWeightVector {
 public:
  /// Throws Error(kInvalidParameters) on non-finite components.
  explicit LogWeightVector(std::vector<double> y);

  std::size_t size() const noexcept { return y_.size(); }
  double operator[](std::size_t k) const { return y_[k]; }
  std::span<const double> values() const noexcept { return y_; }

 private:
  std::vector<double> y_;
};

/// exp(y) rescaled to `norm`. ProductOne is centred in the log domain.
WeightVector to_weights(const LogWeightVector& y, Normalization norm);
LogWeightVector to_log(const WeightVector& w);

}  // namespace pcmw
