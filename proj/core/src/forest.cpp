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

#include "pcmw/forest.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <string>
#include <thread>
#include <utility>

#include "pcmw/error.hpp"

namespace pcmw {

namespace {

std::vector<double> tree_logs(const IncompletePCM& pcm, const SpanningTree& tree) {
  const std::size_t n = pcm.size();
  if (tree.node_count() != n) {
    throw Error(ErrorCode::kEdgeNotInPcm, "tree size does not match matrix");
  }
  std::vector<double> y(n, 0.0);
  for (NodeId child : tree.order().subspan(1)) {
    const NodeId parent = tree.parent(child);
    const auto b = pcm.log_value(parent, child);
    if (!b) {
      throw Error(ErrorCode::kEdgeNotInPcm,
                  "tree edge {" + std::to_string(parent + 1) + "," +
                      std::to_string(child + 1) + "} is not a known comparison");
    }
    // w_parent / w_child = a_parent,child
    y[child] = y[parent] - *b;
  }
  return y;
}

struct ChunkSum {
  std::uint64_t count = 0;
  std::vector<double> log_sum;
  std::vector<double> weight_sum;
  std::vector<LogWeightVector> retained;
};

ChunkSum sum_chunk(const IncompletePCM& pcm, std::span<const SpanningTree> trees,
                   bool retain) {
  const std::size_t n = pcm.size();
  ChunkSum sum;
  sum.log_sum.assign(n, 0.0);
  sum.weight_sum.assign(n, 0.0);
  for (const SpanningTree& tree : trees) {
    std::vector<double> y = tree_logs(pcm, tree);
    for (std::size_t k = 0; k < n; ++k) {
      sum.log_sum[k] += y[k];
      sum.weight_sum[k] += std::exp(y[k]);
    }
    if (retain) sum.retained.emplace_back(std::move(y));
    ++sum.count;
  }
  return sum;
}

void require_nonempty(const TreeWeightSet& set) {
  if (set.tree_count == 0) {
    throw Error(ErrorCode::kEmptyStream, "no spanning trees to aggregate");
  }
}

}  // namespace

LogWeightVector tree_log_weights(const IncompletePCM& pcm, const SpanningTree& tree) {
  return LogWeightVector(tree_logs(pcm, tree));
}

WeightVector tree_weight_vector(const IncompletePCM& pcm, const SpanningTree& tree) {
  return to_weights(tree_log_weights(pcm, tree), Normalization::kFirstOne);
}

CompletedTreeMatrix::CompletedTreeMatrix(std::size_t n, std::vector<Entry> entries)
    : n_(n), entries_(std::move(entries)), index_(n * n, -1) {
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const Edge e = entries_[k].edge;
    index_[e.u * n_ + e.v] = static_cast<int>(k);
    index_[e.v * n_ + e.u] = static_cast<int>(k);
  }
}

std::optional<double> CompletedTreeMatrix::log_value(NodeId i, NodeId j) const {
  if (i >= n_ || j >= n_ || i == j) return std::nullopt;
  const int k = index_[i * n_ + j];
  if (k < 0) return std::nullopt;
  const double b = entries_[k].log_value;
  return i < j ? b : -b;
}

bool CompletedTreeMatrix::is_tree_edge(NodeId i, NodeId j) const {
  if (i >= n_ || j >= n_ || i == j) return false;
  const int k = index_[i * n_ + j];
  return k >= 0 && entries_[k].tree_edge;
}

CompletedTreeMatrix complete_tree_matrix(const IncompletePCM& pcm,
                                         const SpanningTree& tree) {
  const std::vector<double> y = tree_logs(pcm, tree);
  std::vector<CompletedTreeMatrix::Entry> entries;
  entries.reserve(pcm.comparison_count());
  for (const auto& c : pcm.comparisons()) {
    const Edge e{c.i, c.j};
    if (tree.contains(e)) {
      entries.push_back({e, c.log_value, true});
    } else {
      entries.push_back({e, y[c.i] - y[c.j], false});
    }
  }
  return CompletedTreeMatrix(pcm.size(), std::move(entries));
}

TreeSource all_trees(const IncompletePCM& pcm) {
  auto enumerator =
      std::make_shared<SpanningTreeEnumerator>(build_graph(pcm));
  return [enumerator] { return enumerator->next(); };
}

TreeSource tree_list(std::span<const SpanningTree> trees) {
  auto next = std::make_shared<std::size_t>(0);
  return [trees, next]() -> std::optional<SpanningTree> {
    if (*next >= trees.size()) return std::nullopt;
    return trees[(*next)++];
  };
}

TreeWeightSet accumulate_tree_weights(const IncompletePCM& pcm,
                                      const TreeSource& trees,
                                      const AggregationOptions& options) {
  const std::size_t n = pcm.size();
  const std::size_t lanes = std::max(1u, options.threads);
  TreeWeightSet set;
  set.log_sum.assign(n, 0.0);
  set.weight_sum.assign(n, 0.0);

  bool exhausted = false;
  while (!exhausted) {
    std::vector<std::vector<SpanningTree>> batch;
    while (batch.size() < lanes && !exhausted) {
      std::vector<SpanningTree> chunk;
      chunk.reserve(kAggregationChunk);
      while (chunk.size() < kAggregationChunk) {
        auto tree = trees();
        if (!tree) {
          exhausted = true;
          break;
        }
        chunk.push_back(std::move(*tree));
      }
      if (!chunk.empty()) batch.push_back(std::move(chunk));
    }

    std::vector<ChunkSum> sums(batch.size());
    if (lanes == 1 || batch.size() == 1) {
      for (std::size_t c = 0; c < batch.size(); ++c) {
        sums[c] = sum_chunk(pcm, batch[c], options.retain_per_tree);
      }
    } else {
      std::vector<std::exception_ptr> errors(batch.size());
      {
        std::vector<std::jthread> workers;
        workers.reserve(batch.size());
        for (std::size_t c = 0; c < batch.size(); ++c) {
          workers.emplace_back([&, c] {
            try {
              sums[c] = sum_chunk(pcm, batch[c], options.retain_per_tree);
            } catch (...) {
              errors[c] = std::current_exception();
            }
          });
        }
      }
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }

    for (ChunkSum& sum : sums) {
      for (std::size_t k = 0; k < n; ++k) {
        set.log_sum[k] += sum.log_sum[k];
        set.weight_sum[k] += sum.weight_sum[k];
      }
      set.tree_count += sum.count;
      for (auto& y : sum.retained) set.per_tree.push_back(std::move(y));
    }
  }
  return set;
}

WeightVector geometric_mean(const TreeWeightSet& set, Normalization norm) {
  require_nonempty(set);
  std::vector<double> mean(set.log_sum.size());
  const auto count = static_cast<double>(set.tree_count);
  for (std::size_t k = 0; k < mean.size(); ++k) mean[k] = set.log_sum[k] / count;
  return to_weights(LogWeightVector(std::move(mean)), norm);
}

WeightVector arithmetic_mean(const TreeWeightSet& set, Normalization norm) {
  require_nonempty(set);
  std::vector<double> logs(set.weight_sum.size());
  const auto count = static_cast<double>(set.tree_count);
  for (std::size_t k = 0; k < logs.size(); ++k) {
    logs[k] = std::log(set.weight_sum[k] / count);
  }
  return to_weights(LogWeightVector(std::move(logs)), norm);
}

namespace {

void check_vectors(std::span<const std::vector<double>> vectors) {
  if (vectors.empty()) throw Error(ErrorCode::kEmptyStream, "no weight vectors");
  const std::size_t n = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != n || n == 0) {
      throw Error(ErrorCode::kInvalidParameters, "weight vector size mismatch");
    }
    for (double x : v) {
      if (!std::isfinite(x) || !(x > 0.0)) {
        throw Error(ErrorCode::kInvalidParameters, "weights must be positive");
      }
    }
  }
}

}  // namespace

WeightVector geometric_mean(std::span<const std::vector<double>> vectors,
                            Normalization norm) {
  check_vectors(vectors);
  std::vector<double> mean(vectors.front().size(), 0.0);
  for (const auto& v : vectors) {
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += std::log(v[k]);
  }
  for (double& m : mean) m /= static_cast<double>(vectors.size());
  return to_weights(LogWeightVector(std::move(mean)), norm);
}

WeightVector arithmetic_mean(std::span<const std::vector<double>> vectors,
                             Normalization norm) {
  check_vectors(vectors);
  std::vector<double> mean(vectors.front().size(), 0.0);
  for (const auto& v : vectors) {
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += v[k] / v[0];
  }
  for (double& m : mean) m = std::log(m / static_cast<double>(vectors.size()));
  return to_weights(LogWeightVector(std::move(mean)), norm);
}

WeightVector aggregate_geometric(const IncompletePCM& pcm, const TreeSource& trees,
                                 Normalization norm,
                                 const AggregationOptions& options) {
  return geometric_mean(accumulate_tree_weights(pcm, trees, options), norm);
}

WeightVector aggregate_geometric(const IncompletePCM& pcm, Normalization norm,
                                 const AggregationOptions& options) {
  return aggregate_geometric(pcm, all_trees(pcm), norm, options);
}

WeightVector aggregate_arithmetic(const IncompletePCM& pcm, const TreeSource& trees,
                                  Normalization norm,
                                  const AggregationOptions& options) {
  return arithmetic_mean(accumulate_tree_weights(pcm, trees, options), norm);
}

WeightVector aggregate_arithmetic(const IncompletePCM& pcm, Normalization norm,
                                  const AggregationOptions& options) {
  return aggregate_arithmetic(pcm, all_trees(pcm), norm, options);
}

}  // namespace pcmw
