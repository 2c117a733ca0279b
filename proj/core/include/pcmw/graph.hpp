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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "pcmw/pcm.hpp"

namespace pcmw {

/// Undirected edge stored with u < v.
struct Edge {
  NodeId u;
  NodeId v;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// The comparison graph: one node per item, one edge per known comparison.
class ComparisonGraph {
 public:
  /// Throws Error(kInvalidParameters) on self-loops, duplicates or out of
  /// range endpoints.
  ComparisonGraph(std::size_t n, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  /// Sorted ascending, u < v in each edge.
  std::span<const Edge> edges() const noexcept { return edges_; }
  /// Sorted ascending, duplicate-free.
  std::span<const NodeId> neighbors(NodeId i) const { return adjacency_[i]; }
  std::size_t degree(NodeId i) const { return adjacency_[i].size(); }
  bool has_edge(NodeId i, NodeId j) const;

  friend bool operator==(const ComparisonGraph& a, const ComparisonGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
};

ComparisonGraph build_graph(const IncompletePCM& pcm);

bool is_connected(const ComparisonGraph& g);
/// Nodes not reachable from node 0, ascending. Empty iff connected.
std::vector<NodeId> unreachable_nodes(const ComparisonGraph& g);
/// Throws DisconnectedGraphError unless g is connected.
void require_connected(const ComparisonGraph& g);

/// Dense integer Laplacian: degree on the diagonal, -1 for adjacent pairs.
class LaplacianMatrix {
 public:
  explicit LaplacianMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }
  std::int64_t& operator()(std::size_t i, std::size_t j) {
    return data_[i * n_ + j];
  }

  friend bool operator==(const LaplacianMatrix&, const LaplacianMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<std::int64_t> data_;
};

LaplacianMatrix laplacian(const ComparisonGraph& g);

/// Number of spanning trees by the matrix-tree theorem: the determinant of
/// the Laplacian with row and column 0 removed, computed with exact
/// fraction-free (Bareiss) elimination. Returns 0 iff g is disconnected.
///
/// Throws Error(kOverflow) when the count, or an intermediate minor, does not
/// fit the fixed integer width.
std::uint64_t count_spanning_trees(const ComparisonGraph& g);

/// A spanning tree of a graph on n nodes, rooted at node 0.
class SpanningTree {
 public:
  static constexpr NodeId kNoParent = std::numeric_limits<NodeId>::max();

  /// Builds the rooted form from n-1 edges. Throws Error(kInvalidParameters)
  /// unless the edges form a tree covering all n nodes.
  SpanningTree(std::size_t n, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return parent_.size(); }
  /// Sorted ascending.
  std::span<const Edge> edges() const noexcept { return edges_; }
  /// parent(0) == kNoParent.
  NodeId parent(NodeId i) const { return parent_[i]; }
  /// Nodes in breadth-first order from the root; parents precede children.
  std::span<const NodeId> order() const noexcept { return order_; }
  bool contains(Edge e) const;
  /// Tree path from `from` to `to` as a node sequence, both ends included.
  std::vector<NodeId> path(NodeId from, NodeId to) const;

  friend bool operator==(const SpanningTree& a, const SpanningTree& b) {
    return a.edges_ == b.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<NodeId> parent_;
  std::vector<NodeId> order_;
  std::vector<std::size_t> depth_;
};

/// True if every edge of t is an edge of g and both have the same nodes.
bool is_spanning_tree_of(const SpanningTree& t, const ComparisonGraph& g);

/// Streams every spanning tree of a connected graph exactly once, in
/// lexicographic order of the sorted edge lists.
///
/// Binary include/exclude search over the sorted edges. An edge is included
/// only if it joins two components of the partial forest and excluded only
/// if the remaining edges still connect the graph, so every branch ends in a
/// tree and the work per tree is polynomial in n and m. Trees are produced
/// one at a time; nothing is retained between calls to next().
class SpanningTreeEnumerator {
 public:
  /// Throws DisconnectedGraphError if g is disconnected. The graph is copied.
  explicit SpanningTreeEnumerator(const ComparisonGraph& g);

  /// The next tree, or std::nullopt once the stream is exhausted.
  std::optional<SpanningTree> next();

  std::uint64_t produced() const noexcept { return produced_; }

 private:
  class RollbackUnionFind {
   public:
    explicit RollbackUnionFind(std::size_t n);
    NodeId find(NodeId x) const;
    bool unite(NodeId a, NodeId b);
    void rollback();

   private:
    std::vector<NodeId> parent_;
    std::vector<std::size_t> size_;
    std::vector<NodeId> history_;
  };

  enum class Stage : std::uint8_t { kFresh, kIncludeTried, kExhausted };

  bool can_exclude(std::size_t edge) const;
  bool retreat();
  SpanningTree emit() const;

  std::size_t n_;
  std::vector<Edge> edges_;
  RollbackUnionFind forest_;
  std::vector<Stage> stage_;
  std::vector<bool> included_;
  std::vector<bool> excluded_;
  std::size_t depth_ = 0;
  std::size_t chosen_ = 0;
  bool started_ = false;
  bool finished_ = false;
  std::uint64_t produced_ = 0;
};

inline SpanningTreeEnumerator enumerate_spanning_trees(const ComparisonGraph& g) {
  return SpanningTreeEnumerator(g);
}

}  // namespace pcmw
