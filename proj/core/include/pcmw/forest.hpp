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
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pcmw/graph.hpp"
#include "pcmw/pcm.hpp"

namespace pcmw {

/// y^s of a spanning tree with y_1 = 0: the unique log weights that fit
/// every tree comparison exactly. One pass over the tree in root-to-leaf
/// order. Throws Error(kEdgeNotInPcm) if a tree edge is not a known
/// comparison.
LogWeightVector tree_log_weights(const IncompletePCM& pcm, const SpanningTree& tree);

/// exp of tree_log_weights, normalized FirstOne.
WeightVector tree_weight_vector(const IncompletePCM& pcm, const SpanningTree& tree);

/// Log-domain comparisons completed from one spanning tree: tree edges keep
/// the input b_ij, every other edge of the graph gets y_i - y_j of the tree
/// weights (the signed sum of b along the tree path).
class CompletedTreeMatrix {
 public:
  struct Entry {
    Edge edge;
    double log_value;  // b^s_uv for u < v
    bool tree_edge;
  };

  CompletedTreeMatrix(std::size_t n, std::vector<Entry> entries);

  std::size_t size() const noexcept { return n_; }
  std::span<const Entry> entries() const noexcept { return entries_; }
  /// b^s_ij, antisymmetric; std::nullopt if {i,j} is not an edge.
  std::optional<double> log_value(NodeId i, NodeId j) const;
  bool is_tree_edge(NodeId i, NodeId j) const;

 private:
  std::size_t n_;
  std::vector<Entry> entries_;
  std::vector<int> index_;
};

CompletedTreeMatrix complete_tree_matrix(const IncompletePCM& pcm,
                                         const SpanningTree& tree);

/// Pull-style tree stream; returns std::nullopt when exhausted.
using TreeSource = std::function<std::optional<SpanningTree>()>;

/// Streams every spanning tree of the comparison graph of `pcm`.
TreeSource all_trees(const IncompletePCM& pcm);
/// Streams a fixed list of trees.
TreeSource tree_list(std::span<const SpanningTree> trees);

/// Trees are summed in fixed-size chunks of the stream order and chunk sums
/// are merged in order, so results are bitwise identical for any thread
/// count.
inline constexpr std::size_t kAggregationChunk = 1024;

struct AggregationOptions {
  unsigned threads = 1;
  /// Keep every y^s (memory grows with the tree count).
  bool retain_per_tree = false;
};

/// Running sums over a tree stream, per-tree vectors normalized w_1 = 1.
struct TreeWeightSet {
  std::uint64_t tree_count = 0;
  std::vector<double> log_sum;     // sum of y^s
  std::vector<double> weight_sum;  // sum of w^s
  std::vector<LogWeightVector> per_tree;
};

TreeWeightSet accumulate_tree_weights(const IncompletePCM& pcm,
                                      const TreeSource& trees,
                                      const AggregationOptions& options = {});

/// Geometric mean exp(log_sum / S) under `norm`. Throws Error(kEmptyStream)
/// if no tree was accumulated.
WeightVector geometric_mean(const TreeWeightSet& set, Normalization norm);
/// Arithmetic mean weight_sum / S under `norm`. Experimental.
WeightVector arithmetic_mean(const TreeWeightSet& set, Normalization norm);

/// Geometric and arithmetic means of arbitrary positive vectors. The
/// arithmetic variant rescales each vector to w_1 = 1 first.
WeightVector geometric_mean(std::span<const std::vector<double>> vectors,
                            Normalization norm);
WeightVector arithmetic_mean(std::span<const std::vector<double>> vectors,
                             Normalization norm);

WeightVector aggregate_geometric(const IncompletePCM& pcm, const TreeSource& trees,
                                 Normalization norm,
                                 const AggregationOptions& options = {});
/// Over all spanning trees of the comparison graph.
WeightVector aggregate_geometric(const IncompletePCM& pcm,
                                 Normalization norm = kDefaultNormalization,
                                 const AggregationOptions& options = {});

WeightVector aggregate_arithmetic(const IncompletePCM& pcm, const TreeSource& trees,
                                  Normalization norm,
                                  const AggregationOptions& options = {});
WeightVector aggregate_arithmetic(const IncompletePCM& pcm,
                                  Normalization norm = kDefaultNormalization,
                                  const AggregationOptions& options = {});

}  // namespace pcmw
