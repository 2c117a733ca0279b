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

#include <cassert>
#include <numeric>
#include <utility>

#include "pcmw/error.hpp"
#include "pcmw/graph.hpp"

namespace pcmw {

SpanningTreeEnumerator::RollbackUnionFind::RollbackUnionFind(std::size_t n)
    : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), NodeId{0});
}

NodeId SpanningTreeEnumerator::RollbackUnionFind::find(NodeId x) const {
  // No path compression; union by size keeps depth logarithmic.
  while (parent_[x] != x) x = parent_[x];
  return x;
}

bool SpanningTreeEnumerator::RollbackUnionFind::unite(NodeId a, NodeId b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  history_.push_back(b);
  return true;
}

void SpanningTreeEnumerator::RollbackUnionFind::rollback() {
  const NodeId b = history_.back();
  history_.pop_back();
  const NodeId a = parent_[b];
  size_[a] -= size_[b];
  parent_[b] = b;
}

SpanningTreeEnumerator::SpanningTreeEnumerator(const ComparisonGraph& g)
    : n_(g.node_count()),
      edges_(g.edges().begin(), g.edges().end()),
      forest_(g.node_count()),
      stage_(edges_.size(), Stage::kFresh),
      included_(edges_.size(), false),
      excluded_(edges_.size(), false) {
  require_connected(g);
}

bool SpanningTreeEnumerator::can_exclude(std::size_t edge) const {
  // Is the graph still connected without the excluded edges and `edge`?
  std::vector<NodeId> parent(n_);
  std::iota(parent.begin(), parent.end(), NodeId{0});
  auto find = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = n_;
  for (std::size_t k = 0; k < edges_.size() && components > 1; ++k) {
    if (k == edge || excluded_[k]) continue;
    const NodeId a = find(edges_[k].u);
    const NodeId b = find(edges_[k].v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

bool SpanningTreeEnumerator::retreat() {
  if (depth_ < stage_.size()) stage_[depth_] = Stage::kFresh;
  if (depth_ == 0) return false;
  --depth_;
  if (included_[depth_]) {
    included_[depth_] = false;
    forest_.rollback();
    --chosen_;
  } else {
    excluded_[depth_] = false;
  }
  return true;
}

SpanningTree SpanningTreeEnumerator::emit() const {
  std::vector<Edge> tree;
  tree.reserve(n_ - 1);
  for (std::size_t k = 0; k < depth_; ++k) {
    if (included_[k]) tree.push_back(edges_[k]);
  }
  return SpanningTree(n_, std::move(tree));
}

std::optional<SpanningTree> SpanningTreeEnumerator::next() {
  if (finished_) return std::nullopt;
  if (!started_) {
    started_ = true;
  } else if (!retreat()) {
    finished_ = true;
    return std::nullopt;
  }
  while (true) {
    if (chosen_ + 1 == n_) {
      ++produced_;
      return emit();
    }
    // Every reachable state can still be completed to a spanning tree.
    assert(depth_ < edges_.size());
    const std::size_t d = depth_;
    if (stage_[d] == Stage::kFresh) {
      stage_[d] = Stage::kIncludeTried;
      if (forest_.unite(edges_[d].u, edges_[d].v)) {
        included_[d] = true;
        ++chosen_;
        ++depth_;
        continue;
      }
    }
    if (stage_[d] == Stage::kIncludeTried) {
      stage_[d] = Stage::kExhausted;
      if (can_exclude(d)) {
        excluded_[d] = true;
        ++depth_;
        continue;
      }
    }
    if (!retreat()) {
      finished_ = true;
      return std::nullopt;
    }
  }
}

}  // namespace pcmw
