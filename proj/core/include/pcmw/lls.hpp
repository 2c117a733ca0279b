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

#include <vector>

#include "pcmw/graph.hpp"
#include "pcmw/pcm.hpp"

namespace pcmw {

/// L y = r with r_i = sum of b_ik over the known comparisons of node i.
struct LlsSystem {
  LaplacianMatrix laplacian;
  std::vector<double> rhs;
};

/// `g` must be build_graph(pcm). Throws Error(kInvalidParameters) on a
/// mismatch and Error(kSolveFailure) if the rhs does not sum to zero within
/// 1e-9.
LlsSystem assemble_system(const IncompletePCM& pcm, const ComparisonGraph& g);

struct LlsSolution {
  /// y with y_1 = 0.
  LogWeightVector log_weights;
  /// ||L y - r||_inf and ||r||_inf.
  double residual_inf;
  double rhs_inf;
};

/// Relative bound on ||L y - r||_inf accepted from the direct solve.
inline constexpr double kLlsResidualTolerance = 1e-10;

/// Solves the reduced system (row and column 1 of L removed, y_1 = 0) with a
/// dense Cholesky factorization.
///
/// Throws DisconnectedGraphError if the comparison graph is not connected
/// and Error(kSolveFailure) if the factorization fails or the residual
/// exceeds kLlsResidualTolerance * max(1, ||r||_inf).
LlsSolution solve_lls_system(const IncompletePCM& pcm);

/// The logarithmic least squares weights under `norm`.
WeightVector solve_lls(const IncompletePCM& pcm,
                       Normalization norm = kDefaultNormalization);

/// Sum over all ordered known pairs (i,j), i != j, of
/// (ln a_ij - ln w_i + ln w_j)^2. Each unordered comparison contributes
/// twice. Invariant under rescaling of w.
double lls_objective(const IncompletePCM& pcm, const WeightVector& w);

/// Rescales w to satisfy `norm`; ratios are unchanged.
WeightVector renormalize(const WeightVector& w, Normalization norm);

}  // namespace pcmw
