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

#include "pcmw/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <stdexcept>
#include <thread>

#include "pcmw/error.hpp"
#include "pcmw/forest.hpp"
#include "pcmw/graph.hpp"
#include "pcmw/lls.hpp"

namespace pcmw {

Theorem4Result check_theorem4(const IncompletePCM& pcm, double tol,
                              unsigned threads) {
  require_connected(build_graph(pcm));
  const WeightVector lls = solve_lls(pcm, Normalization::kProductOne);
  const TreeWeightSet set =
      accumulate_tree_weights(pcm, all_trees(pcm), {.threads = threads});
  const WeightVector trees = geometric_mean(set, Normalization::kProductOne);
  double worst = 0.0;
  for (std::size_t k = 0; k < lls.size(); ++k) {
    worst = std::max(worst, std::abs(trees[k] - lls[k]) / std::abs(lls[k]));
  }
  return {worst, worst <= tol, set.tree_count};
}

Lemma1Result lemma1_sides(const IncompletePCM& pcm) {
  const ComparisonGraph g = build_graph(pcm);
  const std::size_t n = pcm.size();
  Lemma1Result out;
  out.lhs.assign(n, 0.0);
  out.row_sums.assign(n, 0.0);
  for (const auto& c : pcm.comparisons()) {
    out.row_sums[c.i] += c.log_value;
    out.row_sums[c.j] -= c.log_value;
  }
  SpanningTreeEnumerator trees(g);
  while (auto tree = trees.next()) {
    const CompletedTreeMatrix completed = complete_tree_matrix(pcm, *tree);
    for (const auto& entry : completed.entries()) {
      out.lhs[entry.edge.u] += entry.log_value;
      out.lhs[entry.edge.v] -= entry.log_value;
    }
    ++out.tree_count;
  }
  out.rhs.resize(n);
  out.residual.resize(n);
  const auto count = static_cast<double>(out.tree_count);
  for (std::size_t i = 0; i < n; ++i) {
    out.rhs[i] = count * out.row_sums[i];
    out.residual[i] = std::abs(out.lhs[i] - out.rhs[i]);
  }
  return out;
}

double check_lemma1(const IncompletePCM& pcm, NodeId i) {
  if (i >= pcm.size()) {
    throw Error(ErrorCode::kIndexOutOfRange, "node index out of range");
  }
  return lemma1_sides(pcm).residual[i];
}

GeneratedInstance gen_random_pcm(const GeneratorParams& params) {
  const std::size_t n = params.n;
  if (n < 2) throw Error(ErrorCode::kInvalidParameters, "n must be at least 2");
  const std::size_t max_extra = n * (n - 1) / 2 - (n - 1);
  if (params.extra_edges > max_extra) {
    throw Error(ErrorCode::kInvalidParameters,
                "extra_edges must be at most " + std::to_string(max_extra));
  }
  if (!std::isfinite(params.sigma) || params.sigma < 0.0) {
    throw Error(ErrorCode::kInvalidParameters, "sigma must be finite and >= 0");
  }

  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> log_weight(-2.0, 2.0);
  std::vector<double> y(n);
  for (double& v : y) v = log_weight(rng);

  std::vector<NodeId> labels(n);
  for (std::size_t k = 0; k < n; ++k) labels[k] = k;
  std::shuffle(labels.begin(), labels.end(), rng);
  std::vector<bool> adjacent(n * n, false);
  auto mark = [&](NodeId a, NodeId b) {
    adjacent[a * n + b] = true;
    adjacent[b * n + a] = true;
  };
  for (std::size_t p = 1; p < n; ++p) {
    std::uniform_int_distribution<std::size_t> pick(0, p - 1);
    mark(labels[p], labels[pick(rng)]);
  }

  std::vector<std::pair<NodeId, NodeId>> candidates;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (!adjacent[i * n + j]) candidates.emplace_back(i, j);
    }
  }
  std::shuffle(candidates.begin(), candidates.end(), rng);
  for (std::size_t k = 0; k < params.extra_edges; ++k) {
    mark(candidates[k].first, candidates[k].second);
  }

  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<RawEntry> entries;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (!adjacent[i * n + j]) continue;
      const double z = noise(rng);
      entries.push_back({i, j, std::exp(y[i] - y[j] + params.sigma * z)});
    }
  }
  return {validate(n, entries), std::move(y)};
}

VerificationReport verify_instance(const IncompletePCM& pcm, std::string id,
                                   std::uint64_t seed, const Tolerances& tol,
                                   unsigned threads) {
  const ComparisonGraph g = build_graph(pcm);
  require_connected(g);
  const std::uint64_t counted = count_spanning_trees(g);

  const Theorem4Result t4 = check_theorem4(pcm, tol.theorem4, threads);
  const Lemma1Result l1 = lemma1_sides(pcm);
  if (t4.tree_count != counted || l1.tree_count != counted) {
    throw std::logic_error("enumerated tree count disagrees with determinant");
  }

  VerificationReport report;
  report.id = std::move(id);
  report.seed = seed;
  report.n = pcm.size();
  report.m = g.edge_count();
  report.tree_count = counted;
  report.theorem4_max_rel_diff = t4.max_rel_diff;
  report.lemma1_max_abs_residual =
      *std::max_element(l1.residual.begin(), l1.residual.end());
  double r_inf = 0.0;
  for (double r : l1.row_sums) r_inf = std::max(r_inf, std::abs(r));
  report.theorem4_tol = tol.theorem4;
  report.lemma1_tol = tol.lemma1_scale * static_cast<double>(counted) * r_inf;
  report.passed = report.theorem4_max_rel_diff <= report.theorem4_tol &&
                  report.lemma1_max_abs_residual <= report.lemma1_tol;
  return report;
}

nlohmann::ordered_json to_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["id"] = report.id;
  j["seed"] = report.seed;
  j["n"] = report.n;
  j["m"] = report.m;
  j["S"] = report.tree_count;
  j["theorem4_max_rel_diff"] = report.theorem4_max_rel_diff;
  j["lemma1_max_abs_residual"] = report.lemma1_max_abs_residual;
  j["passed"] = report.passed;
  j["theorem4_tol"] = report.theorem4_tol;
  j["lemma1_tol"] = report.lemma1_tol;
  return j;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

GeneratorParams corpus_instance(const CorpusSpec& spec, std::size_t k) {
  if (spec.n_min < 2 || spec.n_min > spec.n_max || spec.extra_min > spec.extra_max ||
      spec.sigmas.empty()) {
    throw Error(ErrorCode::kInvalidParameters, "invalid corpus parameter ranges");
  }
  const std::size_t ns = spec.sigmas.size();
  const std::size_t nn = spec.n_max - spec.n_min + 1;
  const std::size_t ne = spec.extra_max - spec.extra_min + 1;
  GeneratorParams p;
  p.sigma = spec.sigmas[k % ns];
  p.n = spec.n_min + (k / ns) % nn;
  const std::size_t cap = p.n * (p.n - 1) / 2 - (p.n - 1);
  p.extra_edges = std::min(spec.extra_min + (k / (ns * nn)) % ne, cap);
  p.seed = splitmix64(spec.seed + k);
  return p;
}

std::vector<VerificationReport> verify_corpus(const CorpusSpec& spec,
                                              const Tolerances& tol,
                                              unsigned threads) {
  std::vector<GeneratorParams> params(spec.count);
  for (std::size_t k = 0; k < spec.count; ++k) params[k] = corpus_instance(spec, k);

  std::vector<VerificationReport> reports(spec.count);
  auto run = [&](std::size_t k) {
    const GeneratedInstance inst = gen_random_pcm(params[k]);
    reports[k] = verify_instance(inst.pcm, "corpus-" + std::to_string(k),
                                 params[k].seed, tol, 1);
  };
  const unsigned lanes = std::max(1u, threads);
  if (lanes == 1) {
    for (std::size_t k = 0; k < spec.count; ++k) run(k);
    return reports;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(lanes);
  {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < lanes; ++t) {
      workers.emplace_back([&, t] {
        try {
          for (std::size_t k = next++; k < spec.count; k = next++) run(k);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return reports;
}

}  // namespace pcmw
