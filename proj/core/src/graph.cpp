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

#include "pcmw/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>
#include <utility>

#include "pcmw/error.hpp"

namespace pcmw {

namespace {

__extension__ using Int128 = __int128;

}  // namespace

ComparisonGraph::ComparisonGraph(std::size_t n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), adjacency_(n) {
  for (Edge& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= n_ || e.u == e.v) {
      throw Error(ErrorCode::kInvalidParameters,
                  "invalid edge {" + std::to_string(e.u + 1) + "," +
                      std::to_string(e.v + 1) + "}");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw Error(ErrorCode::kInvalidParameters, "duplicate edge");
  }
  for (const Edge& e : edges_) {
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool ComparisonGraph::has_edge(NodeId i, NodeId j) const {
  if (i >= n_ || j >= n_) return false;
  const auto& list = adjacency_[i];
  return std::binary_search(list.begin(), list.end(), j);
}

ComparisonGraph build_graph(const IncompletePCM& pcm) {
  std::vector<Edge> edges;
  edges.reserve(pcm.comparison_count());
  for (const auto& c : pcm.comparisons()) edges.push_back({c.i, c.j});
  return ComparisonGraph(pcm.size(), std::move(edges));
}

std::vector<NodeId> unreachable_nodes(const ComparisonGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<bool> seen(n, false);
  std::vector<NodeId> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const NodeId x = stack.back();
    stack.pop_back();
    for (NodeId y : g.neighbors(x)) {
      if (!seen[y]) {
        seen[y] = true;
        stack.push_back(y);
      }
    }
  }
  std::vector<NodeId> out;
  for (NodeId i = 0; i < n; ++i) {
    if (!seen[i]) out.push_back(i);
  }
  return out;
}

bool is_connected(const ComparisonGraph& g) {
  return unreachable_nodes(g).empty();
}

void require_connected(const ComparisonGraph& g) {
  auto missing = unreachable_nodes(g);
  if (!missing.empty()) throw DisconnectedGraphError(std::move(missing));
}

LaplacianMatrix laplacian(const ComparisonGraph& g) {
  LaplacianMatrix lap(g.node_count());
  for (const Edge& e : g.edges()) {
    lap(e.u, e.u) += 1;
    lap(e.v, e.v) += 1;
    lap(e.u, e.v) = -1;
    lap(e.v, e.u) = -1;
  }
  return lap;
}

std::uint64_t count_spanning_trees(const ComparisonGraph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidParameters,
                "tree counting needs at least 2 nodes");
  }
  const LaplacianMatrix lap = laplacian(g);
  const std::size_t m = n - 1;
  std::vector<Int128> a(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) a[i * m + j] = lap(i + 1, j + 1);
  }
  auto at = [&](std::size_t i, std::size_t j) -> Int128& { return a[i * m + j]; };
  auto overflow = [] {
    return Error(ErrorCode::kOverflow,
                 "spanning tree count exceeds 64-bit unsigned range");
  };

  Int128 previous = 1;
  bool negate = false;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (at(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < m && at(r, k) == 0) ++r;
      if (r == m) return 0;
      for (std::size_t j = 0; j < m; ++j) std::swap(at(k, j), at(r, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t j = k + 1; j < m; ++j) {
        Int128 lhs = 0;
        Int128 rhs = 0;
        Int128 diff = 0;
        if (__builtin_mul_overflow(at(i, j), at(k, k), &lhs) ||
            __builtin_mul_overflow(at(i, k), at(k, j), &rhs) ||
            __builtin_sub_overflow(lhs, rhs, &diff)) {
          throw overflow();
        }
        // Exact by Sylvester's identity.
        at(i, j) = diff / previous;
      }
      at(i, k) = 0;
    }
    previous = at(k, k);
  }
  Int128 det = at(m - 1, m - 1);
  if (negate) det = -det;
  if (det <= 0) return 0;
  if (det > static_cast<Int128>(std::numeric_limits<std::uint64_t>::max())) {
    throw overflow();
  }
  return static_cast<std::uint64_t>(det);
}

SpanningTree::SpanningTree(std::size_t n, std::vector<Edge> edges)
    : edges_(std::move(edges)), parent_(n, kNoParent), depth_(n, 0) {
  auto invalid = [](const std::string& why) {
    return Error(ErrorCode::kInvalidParameters, "not a spanning tree: " + why);
  };
  if (n == 0) throw invalid("no nodes");
  if (edges_.size() + 1 != n) throw invalid("expected n-1 edges");
  for (Edge& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= n || e.u == e.v) throw invalid("bad edge");
  }
  std::sort(edges_.begin(), edges_.end());

  // CSR adjacency of the tree.
  std::vector<std::size_t> offset(n + 1, 0);
  for (const Edge& e : edges_) {
    ++offset[e.u + 1];
    ++offset[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offset[i + 1] += offset[i];
  std::vector<NodeId> adj(offset[n]);
  std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
  for (const Edge& e : edges_) {
    adj[fill[e.u]++] = e.v;
    adj[fill[e.v]++] = e.u;
  }

  std::vector<bool> seen(n, false);
  order_.reserve(n);
  order_.push_back(0);
  seen[0] = true;
  for (std::size_t head = 0; head < order_.size(); ++head) {
    const NodeId x = order_[head];
    for (std::size_t k = offset[x]; k < offset[x + 1]; ++k) {
      const NodeId y = adj[k];
      if (seen[y]) continue;
      seen[y] = true;
      parent_[y] = x;
      depth_[y] = depth_[x] + 1;
      order_.push_back(y);
    }
  }
  // n-1 edges reaching all n nodes cannot contain a cycle.
  if (order_.size() != n) throw invalid("edges do not connect all nodes");
}

bool SpanningTree::contains(Edge e) const {
  if (e.u > e.v) std::swap(e.u, e.v);
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::vector<NodeId> SpanningTree::path(NodeId from, NodeId to) const {
  std::vector<NodeId> head{from};
  std::vector<NodeId> tail{to};
  NodeId a = from;
  NodeId b = to;
  while (depth_[a] > depth_[b]) head.push_back(a = parent_[a]);
  while (depth_[b] > depth_[a]) tail.push_back(b = parent_[b]);
  while (a != b) {
    head.push_back(a = parent_[a]);
    tail.push_back(b = parent_[b]);
  }
  // a == b is the meeting point, present at the end of both lists.
  tail.pop_back();
  head.insert(head.end(), tail.rbegin(), tail.rend());
  return head;
}

bool is_spanning_tree_of(const SpanningTree& t, const ComparisonGraph& g) {
  if (t.node_count() != g.node_count()) return false;
  return std::all_of(t.edges().begin(), t.edges().end(),
                     [&](const Edge& e) { return g.has_edge(e.u, e.v); });
}

}  // namespace pcmw
