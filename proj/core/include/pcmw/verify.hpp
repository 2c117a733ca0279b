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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pcmw/pcm.hpp"

namespace pcmw {

struct Tolerances {
  /// Max relative component difference between the two pipelines.
  double theorem4 = 1e-10;
  /// The per-node identity tolerance is lemma1_scale * S * max_i |r_i|.
  double lemma1_scale = 1e-9;
};

struct Theorem4Result {
  double max_rel_diff;
  bool pass;
  std::uint64_t tree_count;
};

/// Compares solve_lls with the geometric mean over all spanning trees, both
/// normalized to product one. Throws DisconnectedGraphError.
Theorem4Result check_theorem4(const IncompletePCM& pcm, double tol = 1e-10,
                              unsigned threads = 1);

/// Both sides of the per-node averaging identity: for node i,
///   lhs_i = sum over trees s, neighbours k of b^s_ik  (b^s from the
///           completed tree matrix; tree edges keep b_ik)
///   rhs_i = S * r_i, r_i = sum over neighbours k of b_ik.
struct Lemma1Result {
  std::uint64_t tree_count = 0;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> row_sums;  // r_i
  std::vector<double> residual;  // |lhs_i - rhs_i|
};

/// One enumeration pass over all spanning trees. Throws
/// DisconnectedGraphError.
Lemma1Result lemma1_sides(const IncompletePCM& pcm);
/// |lhs_i - rhs_i| for a single node.
double check_lemma1(const IncompletePCM& pcm, NodeId i);

struct GeneratorParams {
  std::size_t n = 0;
  std::size_t extra_edges = 0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

struct GeneratedInstance {
  IncompletePCM pcm;
  /// ln w of the hidden generating weights.
  std::vector<double> hidden_log_weights;
};

/// Random connected instance, a pure function of its parameters.
///
/// With a std::mt19937_64 seeded by `seed`:
///  1. ln w_k ~ U[-2, 2] for k = 1..n, in order.
///  2. A random labelling (std::shuffle of 1..n); the node at position p > 1
///     attaches to the node at a uniform position in [1, p-1].
///  3. The non-tree pairs, listed lexicographically, are shuffled and the
///     first `extra_edges` are added.
///  4. For every edge i < j in lexicographic order,
///     a_ij = (w_i / w_j) * exp(sigma * z), z from one
///     std::normal_distribution<double>(0, 1) instance.
///
/// Throws Error(kInvalidParameters) unless n >= 2, sigma >= 0 and
/// extra_edges <= n(n-1)/2 - (n-1).
GeneratedInstance gen_random_pcm(const GeneratorParams& params);

struct VerificationReport {
  std::string id;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint64_t tree_count = 0;
  double theorem4_max_rel_diff = 0.0;
  double lemma1_max_abs_residual = 0.0;
  bool passed = false;
  double theorem4_tol = 0.0;
  double lemma1_tol = 0.0;
};

/// Runs both checks. Throws DisconnectedGraphError before doing any work on
/// a disconnected instance, and std::logic_error if the enumerated tree
/// count disagrees with the determinant count.
VerificationReport verify_instance(const IncompletePCM& pcm, std::string id,
                                   std::uint64_t seed,
                                   const Tolerances& tol = {},
                                   unsigned threads = 1);

nlohmann::ordered_json to_json(const VerificationReport& report);

/// Parameter grid for seeded corpus runs. Instance k cycles through sigmas
/// fastest, then n, then extra edges (clamped to what n allows); its
/// generator seed is splitmix64(seed + k).
struct CorpusSpec {
  std::size_t n_min = 3;
  std::size_t n_max = 7;
  std::size_t extra_min = 0;
  std::size_t extra_max = 5;
  std::vector<double> sigmas{0.0, 0.1, 0.5, 1.0};
  std::size_t count = 1000;
  std::uint64_t seed = 0;
};

/// Throws Error(kInvalidParameters) on an empty or inverted range.
GeneratorParams corpus_instance(const CorpusSpec& spec, std::size_t k);

/// Verifies every corpus instance, `threads` instances at a time. Reports
/// are returned in instance order.
std::vector<VerificationReport> verify_corpus(const CorpusSpec& spec,
                                              const Tolerances& tol = {},
                                              unsigned threads = 1);

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace pcmw
