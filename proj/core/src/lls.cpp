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

#include "pcmw/lls.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "pcmw/error.hpp"

namespace pcmw {

LlsSystem assemble_system(const IncompletePCM& pcm, const ComparisonGraph& g) {
  const std::size_t n = pcm.size();
  if (g.node_count() != n || g.edge_count() != pcm.comparison_count()) {
    throw Error(ErrorCode::kInvalidParameters,
                "graph does not match the comparison matrix");
  }
  std::vector<double> rhs(n, 0.0);
  for (const auto& c : pcm.comparisons()) {
    if (!g.has_edge(c.i, c.j)) {
      throw Error(ErrorCode::kInvalidParameters,
                  "graph does not match the comparison matrix");
    }
    rhs[c.i] += c.log_value;
    rhs[c.j] -= c.log_value;
  }
  const double total = std::accumulate(rhs.begin(), rhs.end(), 0.0);
  if (std::abs(total) > 1e-9) {
    throw Error(ErrorCode::kSolveFailure,
                "right-hand side does not sum to zero");
  }
  return {laplacian(g), std::move(rhs)};
}

LlsSolution solve_lls_system(const IncompletePCM& pcm) {
  const ComparisonGraph g = build_graph(pcm);
  require_connected(g);
  const LlsSystem sys = assemble_system(pcm, g);
  const auto n = static_cast<Eigen::Index>(pcm.size());
  const Eigen::Index m = n - 1;

  Eigen::MatrixXd reduced(m, m);
  Eigen::VectorXd rhs(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    rhs(i) = sys.rhs[i + 1];
    for (Eigen::Index j = 0; j < m; ++j) {
      reduced(i, j) = static_cast<double>(sys.laplacian(i + 1, j + 1));
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(reduced);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kSolveFailure,
                "reduced Laplacian is not positive definite");
  }
  const Eigen::VectorXd tail = llt.solve(rhs);

  std::vector<double> y(pcm.size(), 0.0);
  for (Eigen::Index i = 0; i < m; ++i) y[i + 1] = tail(i);

  double residual = 0.0;
  double rhs_inf = 0.0;
  for (std::size_t i = 0; i < pcm.size(); ++i) {
    double ly = 0.0;
    for (std::size_t j = 0; j < pcm.size(); ++j) {
      ly += static_cast<double>(sys.laplacian(i, j)) * y[j];
    }
    residual = std::max(residual, std::abs(ly - sys.rhs[i]));
    rhs_inf = std::max(rhs_inf, std::abs(sys.rhs[i]));
  }
  if (!(residual <= kLlsResidualTolerance * std::max(1.0, rhs_inf))) {
    throw Error(ErrorCode::kSolveFailure,
                "residual " + std::to_string(residual) + " above tolerance");
  }
  return {LogWeightVector(std::move(y)), residual, rhs_inf};
}

WeightVector solve_lls(const IncompletePCM& pcm, Normalization norm) {
  return to_weights(solve_lls_system(pcm).log_weights, norm);
}

double lls_objective(const IncompletePCM& pcm, const WeightVector& w) {
  if (w.size() != pcm.size()) {
    throw Error(ErrorCode::kInvalidParameters, "weight vector size mismatch");
  }
  double total = 0.0;
  for (const auto& c : pcm.comparisons()) {
    const double r = c.log_value - (std::log(w[c.i]) - std::log(w[c.j]));
    total += 2.0 * r * r;
  }
  return total;
}

WeightVector renormalize(const WeightVector& w, Normalization norm) {
  std::vector<double> out(w.values().begin(), w.values().end());
  double scale = 1.0;
  switch (norm) {
    case Normalization::kFirstOne:
      scale = out.front();
      break;
    case Normalization::kSumOne:
      scale = std::accumulate(out.begin(), out.end(), 0.0);
      break;
    case Normalization::kProductOne: {
      double log_sum = 0.0;
      for (double v : out) log_sum += std::log(v);
      scale = std::exp(log_sum / static_cast<double>(out.size()));
      break;
    }
  }
  for (double& v : out) v /= scale;
  if (norm == Normalization::kFirstOne) out.front() = 1.0;
  return WeightVector(std::move(out), norm);
}

}  // namespace pcmw
