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

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "pcmw/error.hpp"
#include "pcmw/graph.hpp"
#include "support/oracles.hpp"

namespace pcmw {
namespace {

ComparisonGraph graph_of(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  std::vector<Edge> edges;
  for (auto [i, j] : pairs) edges.push_back({i, j});
  return ComparisonGraph(n, edges);
}

ComparisonGraph complete_graph(std::size_t n) {
  return graph_of(n, testing::complete_edges(n));
}

std::vector<std::vector<Edge>> enumerate_all(const ComparisonGraph& g) {
  std::vector<std::vector<Edge>> out;
  SpanningTreeEnumerator trees(g);
  while (auto t = trees.next()) out.emplace_back(t->edges().begin(), t->edges().end());
  return out;
}

TEST(BuildGraph, SixNodeExample) {
  const ComparisonGraph g = build_graph(testing::example1());
  EXPECT_EQ(g.node_count(), 6u);
  EXPECT_EQ(g.edge_count(), 7u);
  const std::vector<Edge> expected{{0, 1}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {2, 3}, {3, 4}};
  EXPECT_TRUE(std::equal(g.edges().begin(), g.edges().end(), expected.begin(), expected.end()));
  const std::vector<NodeId> n0{1, 3, 4, 5};
  EXPECT_TRUE(std::ranges::equal(g.neighbors(0), n0));
}

TEST(BuildGraph, CompleteAndSparse) {
  const ComparisonGraph k4 = build_graph(testing::consistent_pcm({1, 2, 3, 4}, testing::complete_edges(4)));
  EXPECT_EQ(k4.edge_count(), 6u);
  const std::vector<RawEntry> one{{0, 1, 2.0}};
  const ComparisonGraph sparse = build_graph(validate(3, one));
  EXPECT_EQ(sparse.node_count(), 3u);
  EXPECT_EQ(sparse.edge_count(), 1u);
  EXPECT_FALSE(is_connected(sparse));
}

TEST(BuildGraph, RejectsLoopsAndDuplicates) {
  EXPECT_THROW(graph_of(3, {{1, 1}}), Error);
  EXPECT_THROW(graph_of(3, {{0, 1}, {1, 0}}), Error);
  EXPECT_THROW(graph_of(3, {{0, 3}}), Error);
}

TEST(Connectivity, Cases) {
  EXPECT_TRUE(is_connected(build_graph(testing::example1())));
  const ComparisonGraph g = graph_of(3, {{0, 1}});
  EXPECT_FALSE(is_connected(g));
  EXPECT_EQ(unreachable_nodes(g), std::vector<NodeId>{2});
  EXPECT_TRUE(is_connected(graph_of(2, {{0, 1}})));
  try {
    require_connected(g);
    FAIL();
  } catch (const DisconnectedGraphError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDisconnectedGraph);
    EXPECT_NE(std::string(e.what()).find("{3}"), std::string::npos);
  }
}

TEST(Laplacian, SixNodeExampleMatrix) {
  const std::int64_t expected[6][6] = {
      {4, -1, 0, -1, -1, -1}, {-1, 2, -1, 0, 0, 0}, {0, -1, 2, -1, 0, 0},
      {-1, 0, -1, 3, -1, 0},  {-1, 0, 0, -1, 2, 0}, {-1, 0, 0, 0, 0, 1},
  };
  const LaplacianMatrix lap = laplacian(build_graph(testing::example1()));
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(lap(i, j), expected[i][j]) << i << "," << j;
  }
}

TEST(Laplacian, TriangleAndPath) {
  const LaplacianMatrix k3 = laplacian(complete_graph(3));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(k3(i, j), i == j ? 2 : -1);
  }
  const LaplacianMatrix path = laplacian(graph_of(3, {{0, 1}, {1, 2}}));
  const std::int64_t expected[3][3] = {{1, -1, 0}, {-1, 2, -1}, {0, -1, 1}};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(path(i, j), expected[i][j]);
  }
}

TEST(Laplacian, SymmetricWithZeroRowSums) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 9;
    const ComparisonGraph g = graph_of(n, testing::random_connected_edges(n, 0.4, rng));
    const LaplacianMatrix lap = laplacian(g);
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t row = 0;
      for (std::size_t j = 0; j < n; ++j) {
        row += lap(i, j);
        EXPECT_EQ(lap(i, j), lap(j, i));
      }
      EXPECT_EQ(row, 0);
      EXPECT_EQ(lap(i, i), static_cast<std::int64_t>(g.degree(i)));
    }
  }
}

TEST(CountSpanningTrees, SixNodeExampleHasEleven) {
  EXPECT_EQ(count_spanning_trees(build_graph(testing::example1())), 11u);
}

TEST(CountSpanningTrees, CayleyFormula) {
  for (std::uint64_t n = 2; n <= 12; ++n) {
    std::uint64_t expected = 1;
    for (std::uint64_t k = 0; k + 2 < n; ++k) expected *= n;
    EXPECT_EQ(count_spanning_trees(complete_graph(n)), expected) << "n=" << n;
  }
}

TEST(CountSpanningTrees, TreesAndDisconnectedGraphs) {
  EXPECT_EQ(count_spanning_trees(graph_of(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}})), 1u);
  EXPECT_EQ(count_spanning_trees(graph_of(4, {{0, 3}, {3, 1}, {1, 2}})), 1u);
  EXPECT_EQ(count_spanning_trees(graph_of(3, {{0, 1}})), 0u);
  // Node 0 isolated: the reduced Laplacian is still singular.
  EXPECT_EQ(count_spanning_trees(graph_of(4, {{1, 2}, {2, 3}, {1, 3}})), 0u);
  EXPECT_EQ(count_spanning_trees(graph_of(4, {{0, 1}, {2, 3}})), 0u);
}

TEST(CountSpanningTrees, OverflowIsReported) {
  // 25^23 > 2^64
  try {
    count_spanning_trees(complete_graph(25));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOverflow);
  }
}

TEST(CountSpanningTrees, InvariantUnderRelabeling) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + trial % 8;
    const auto pairs = testing::random_connected_edges(n, 0.5, rng);
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::pair<NodeId, NodeId>> relabeled;
    for (auto [i, j] : pairs) relabeled.emplace_back(perm[i], perm[j]);
    EXPECT_EQ(count_spanning_trees(graph_of(n, pairs)),
              count_spanning_trees(graph_of(n, relabeled)));
  }
}

TEST(Enumerate, SixNodeExampleGoldenOrder) {
  const auto trees = enumerate_all(build_graph(testing::example1()));
  ASSERT_EQ(trees.size(), 11u);
  // Lexicographic by sorted edge list, 1-based.
  const std::vector<std::vector<std::pair<int, int>>> golden{
      {{1, 2}, {1, 4}, {1, 5}, {1, 6}, {2, 3}}, {{1, 2}, {1, 4}, {1, 5}, {1, 6}, {3, 4}},
      {{1, 2}, {1, 4}, {1, 6}, {2, 3}, {4, 5}}, {{1, 2}, {1, 4}, {1, 6}, {3, 4}, {4, 5}},
      {{1, 2}, {1, 5}, {1, 6}, {2, 3}, {3, 4}}, {{1, 2}, {1, 5}, {1, 6}, {2, 3}, {4, 5}},
      {{1, 2}, {1, 5}, {1, 6}, {3, 4}, {4, 5}}, {{1, 2}, {1, 6}, {2, 3}, {3, 4}, {4, 5}},
      {{1, 4}, {1, 5}, {1, 6}, {2, 3}, {3, 4}}, {{1, 4}, {1, 6}, {2, 3}, {3, 4}, {4, 5}},
      {{1, 5}, {1, 6}, {2, 3}, {3, 4}, {4, 5}},
  };
  for (std::size_t s = 0; s < golden.size(); ++s) {
    ASSERT_EQ(trees[s].size(), 5u);
    for (std::size_t k = 0; k < 5; ++k) {
      EXPECT_EQ(trees[s][k].u + 1, static_cast<NodeId>(golden[s][k].first));
      EXPECT_EQ(trees[s][k].v + 1, static_cast<NodeId>(golden[s][k].second));
    }
  }
}

TEST(Enumerate, CompleteAndStar) {
  EXPECT_EQ(enumerate_all(complete_graph(4)).size(), 16u);
  const auto star = enumerate_all(graph_of(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}));
  ASSERT_EQ(star.size(), 1u);
  EXPECT_EQ(star[0].size(), 4u);
}

TEST(Enumerate, DisconnectedThrows) {
  EXPECT_THROW(SpanningTreeEnumerator(graph_of(3, {{0, 1}})), DisconnectedGraphError);
}

TEST(Enumerate, MatchesDeterminantAndBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> density(0.25, 1.0);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + trial % 6;  // 2..7
    const ComparisonGraph g = graph_of(n, testing::random_connected_edges(n, density(rng), rng));
    const std::uint64_t count = count_spanning_trees(g);

    SpanningTreeEnumerator stream(g);
    std::vector<std::vector<Edge>> trees;
    std::set<std::vector<Edge>> distinct;
    while (auto t = stream.next()) {
      EXPECT_TRUE(is_spanning_tree_of(*t, g));
      EXPECT_EQ(t->edges().size(), n - 1);
      // Parent array agrees with the edge set.
      EXPECT_EQ(t->parent(0), SpanningTree::kNoParent);
      for (NodeId v = 1; v < n; ++v) EXPECT_TRUE(t->contains({t->parent(v), v}));
      trees.emplace_back(t->edges().begin(), t->edges().end());
      distinct.insert(trees.back());
    }
    EXPECT_EQ(trees.size(), count);
    EXPECT_EQ(distinct.size(), count);
    EXPECT_EQ(stream.produced(), count);
    EXPECT_TRUE(std::is_sorted(trees.begin(), trees.end()));
    EXPECT_EQ(trees, testing::brute_force_trees(n, {g.edges().begin(), g.edges().end()}));
  }
}

TEST(SpanningTreeTest, RejectsNonTrees) {
  EXPECT_THROW(SpanningTree(4, {{0, 1}, {1, 2}, {0, 2}}), Error);  // cycle
  EXPECT_THROW(SpanningTree(4, {{0, 1}, {1, 2}}), Error);          // too few
  EXPECT_THROW(SpanningTree(3, {{0, 1}, {0, 3}}), Error);          // bad node
}

TEST(SpanningTreeTest, RootedFormAndPaths) {
  const SpanningTree t(5, {{3, 4}, {0, 1}, {1, 2}, {2, 3}});
  EXPECT_EQ(t.parent(1), 0u);
  EXPECT_EQ(t.parent(4), 3u);
  const std::vector<NodeId> order{0, 1, 2, 3, 4};
  EXPECT_TRUE(std::ranges::equal(t.order(), order));
  EXPECT_EQ(t.path(4, 0), (std::vector<NodeId>{4, 3, 2, 1, 0}));
  EXPECT_EQ(t.path(1, 3), (std::vector<NodeId>{1, 2, 3}));
  EXPECT_EQ(t.path(2, 2), (std::vector<NodeId>{2}));

  const SpanningTree star(4, {{0, 3}, {0, 1}, {0, 2}});
  EXPECT_EQ(star.path(1, 3), (std::vector<NodeId>{1, 0, 3}));
}

}  // namespace
}  // namespace pcmw
