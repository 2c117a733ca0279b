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

#include "pcmw/pcm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>

#include "pcmw/error.hpp"

namespace pcmw {

namespace {

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

std::string pair_name(NodeId i, NodeId j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

std::string format_double(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(17);
  os << v;
  return os.str();
}

struct PairSlot {
  std::optional<double> forward;   // supplied as (i,j), i<j
  std::optional<double> backward;  // supplied as (j,i)
};

void record(std::optional<double>& slot, double v, NodeId i, NodeId j) {
  if (slot && !close_rel(*slot, v, kInternalTolerance)) {
    throw Error(ErrorCode::kDuplicateConflictingEntry,
                "entry " + pair_name(i, j) + " given as both " +
                    format_double(*slot) + " and " + format_double(v));
  }
  slot = v;
}

}  // namespace

bool IncompletePCM::known(NodeId i, NodeId j) const {
  if (i >= n_ || j >= n_) return false;
  return i == j || index_[i * n_ + j] >= 0;
}

std::optional<double> IncompletePCM::value(NodeId i, NodeId j) const {
  if (i >= n_ || j >= n_) return std::nullopt;
  if (i == j) return 1.0;
  const int k = index_[i * n_ + j];
  if (k < 0) return std::nullopt;
  const double v = comparisons_[k].value;
  return i < j ? v : 1.0 / v;
}

std::optional<double> IncompletePCM::log_value(NodeId i, NodeId j) const {
  if (i >= n_ || j >= n_) return std::nullopt;
  if (i == j) return 0.0;
  const int k = index_[i * n_ + j];
  if (k < 0) return std::nullopt;
  const double b = comparisons_[k].log_value;
  return i < j ? b : -b;
}

std::vector<RawEntry> IncompletePCM::entries() const {
  std::vector<RawEntry> out;
  out.reserve(comparisons_.size());
  for (const auto& c : comparisons_) out.push_back({c.i, c.j, c.value});
  return out;
}

IncompletePCM validate(std::size_t n, std::span<const RawEntry> entries) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidParameters,
                "matrix size must be at least 2, got " + std::to_string(n));
  }
  std::map<std::pair<NodeId, NodeId>, PairSlot> slots;
  for (const RawEntry& e : entries) {
    if (e.i >= n || e.j >= n) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "entry " + pair_name(e.i, e.j) + " outside 1.." +
                      std::to_string(n));
    }
    if (!std::isfinite(e.value) || !(e.value > 0.0)) {
      throw Error(ErrorCode::kNonPositiveEntry,
                  "entry " + pair_name(e.i, e.j) + " = " +
                      format_double(e.value) + " is not finite and positive");
    }
    if (e.i == e.j) {
      if (!close_rel(e.value, 1.0, kInternalTolerance)) {
        throw Error(ErrorCode::kReciprocityViolation,
                    "diagonal entry " + pair_name(e.i, e.j) + " = " +
                        format_double(e.value) + " must be 1");
      }
      continue;
    }
    if (e.i < e.j) {
      record(slots[{e.i, e.j}].forward, e.value, e.i, e.j);
    } else {
      record(slots[{e.j, e.i}].backward, e.value, e.i, e.j);
    }
  }

  IncompletePCM pcm;
  pcm.n_ = n;
  pcm.index_.assign(n * n, -1);
  pcm.comparisons_.reserve(slots.size());
  for (const auto& [key, slot] : slots) {
    const auto [i, j] = key;
    double v = 0.0;
    if (slot.forward && slot.backward) {
      const double product = *slot.forward * *slot.backward;
      if (std::abs(product - 1.0) > kInputReciprocityTolerance) {
        throw Error(ErrorCode::kReciprocityViolation,
                    "pair " + pair_name(i, j) + ": a_ij * a_ji = " +
                        format_double(product) + ", expected 1");
      }
      v = *slot.forward;
    } else if (slot.forward) {
      v = *slot.forward;
    } else {
      v = 1.0 / *slot.backward;
    }
    const int k = static_cast<int>(pcm.comparisons_.size());
    pcm.comparisons_.push_back({i, j, v, std::log(v)});
    pcm.index_[i * n + j] = k;
    pcm.index_[j * n + i] = k;
  }
  return pcm;
}

std::string_view to_string(Normalization norm) noexcept {
  switch (norm) {
    case Normalization::kFirstOne: return "first1";
    case Normalization::kSumOne: return "sum1";
    case Normalization::kProductOne: return "prod1";
  }
  return "prod1";
}

std::optional<Normalization> parse_normalization(std::string_view text) {
  if (text == "first1") return Normalization::kFirstOne;
  if (text == "sum1") return Normalization::kSumOne;
  if (text == "prod1") return Normalization::kProductOne;
  return std::nullopt;
}

WeightVector::WeightVector(std::vector<double> weights, Normalization norm)
    : w_(std::move(weights)), norm_(norm) {
  if (w_.empty()) {
    throw Error(ErrorCode::kInvalidParameters, "empty weight vector");
  }
  for (double v : w_) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw Error(ErrorCode::kInvalidParameters,
                  "weight " + format_double(v) + " is not finite and positive");
    }
  }
  bool holds = true;
  switch (norm_) {
    case Normalization::kFirstOne:
      holds = close_rel(w_.front(), 1.0, kInternalTolerance);
      break;
    case Normalization::kSumOne:
      holds = close_rel(std::accumulate(w_.begin(), w_.end(), 0.0), 1.0,
                        kInternalTolerance);
      break;
    case Normalization::kProductOne: {
      double log_sum = 0.0;
      for (double v : w_) log_sum += std::log(v);
      // log of the product; relative 1e-12 on the product ~ absolute on logs.
      holds = std::abs(log_sum) <= kInternalTolerance * static_cast<double>(w_.size());
      break;
    }
  }
  if (!holds) {
    throw Error(ErrorCode::kInvalidParameters,
                "weights do not satisfy normalization " +
                    std::string(to_string(norm_)));
  }
}

LogWeightVector::LogWeightVector(std::vector<double> y) : y_(std::move(y)) {
  for (double v : y_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidParameters, "non-finite log weight");
    }
  }
}

WeightVector to_weights(const LogWeightVector& y, Normalization norm) {
  const auto ys = y.values();
  std::vector<double> w(ys.size());
  switch (norm) {
    case Normalization::kFirstOne:
      for (std::size_t k = 0; k < ys.size(); ++k) w[k] = std::exp(ys[k] - ys[0]);
      w[0] = 1.0;
      break;
    case Normalization::kProductOne: {
      const double mean =
          std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
      for (std::size_t k = 0; k < ys.size(); ++k) w[k] = std::exp(ys[k] - mean);
      break;
    }
    case Normalization::kSumOne: {
      const double top = *std::max_element(ys.begin(), ys.end());
      double total = 0.0;
      for (std::size_t k = 0; k < ys.size(); ++k) {
        w[k] = std::exp(ys[k] - top);
        total += w[k];
      }
      for (double& v : w) v /= total;
      break;
    }
  }
  return WeightVector(std::move(w), norm);
}

LogWeightVector to_log(const WeightVector& w) {
  std::vector<double> y(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) y[k] = std::log(w[k]);
  return LogWeightVector(std::move(y));
}

}  // namespace pcmw
