// Copyright 2026 The Authors.
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

// L-ensemble DPP machinery: P(A) is proportional to det(L_A).

#include <limits>
#include <span>

#include "rddpp/feature_matrix.hpp"

namespace rddpp::dpp {

// Symmetric PSD kernel. Construction symmetrizes and, unless told the input
// is PSD by construction, checks lambda_min >= -1e-8 * max(1, lambda_max).
class PsdKernel {
 public:
  enum class Check { kFull, kSymmetrizeOnly };

  PsdKernel() = default;
  explicit PsdKernel(Matrix matrix, Check check = Check::kFull);

  Index size() const { return static_cast<Index>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }
  double operator()(Index i, Index j) const {
    return matrix_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  Matrix matrix_;
};

struct GreedyResult {
  IndexList indices;                 // in selection order
  std::vector<double> marginal_gains;  // det ratio of each step
  std::vector<double> marginal_log_gains;
  Index k = 0;                       // requested cardinality
  bool rank_exhausted = false;       // stopped before k
};

// A step is refused once the best det ratio drops below this.
inline constexpr double kRankExhaustedGain = 1e-12;

// alpha * Z^T Z
PsdKernel GramKernel(const FeatureMatrix& z, double alpha);
PsdKernel GramKernel(const Matrix& z, double alpha);

// det(L + I), and its natural log.
double Normalizer(const PsdKernel& kernel);
double LogNormalizer(const PsdKernel& kernel);

// Natural log det of L_A; 0 for A empty, -infinity when singular.
double SubsetLogDet(const PsdKernel& kernel, std::span<const Index> subset);

// Greedy MAP via incremental Cholesky updates: O(m) init of the diagonal
// plus O(k^2 m) selection. Ties go to the lowest index.
GreedyResult GreedyMap(const PsdKernel& kernel, Index k);

// Exhaustive argmax of det(L_A) over |A| = k, lexicographic tie-break.
inline constexpr Index kExactMapMaxItems = 20;
inline constexpr Index kExactMapMaxK = 5;
IndexList ExactMap(const PsdKernel& kernel, Index k);

}  // namespace rddpp::dpp
