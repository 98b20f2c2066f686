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

// Rate-distortion diversity measures over a feature matrix Z (d x n):
//   R(Z)      = 1/2 log2 det(I + d/(n eps2) Z Z^T)
//   bound(Z)  = sum_i log2(d/eps2 * (Z Z^T)_ii / n + 1)
//   R_c(Z)    = 1/2 log2 det(I + d/(|C| eps2) Z_C Z_C^T)
//   sdiv(Z)   = R(Z) - sum_c |C_c|/n R_c(Z)
// All values are in bits per dimension.

#include "rddpp/feature_matrix.hpp"

namespace rddpp {

struct RateConfig {
  double eps2 = 0.5;  // squared distortion tolerance

  void Validate() const;
};

enum class GramForm {
  kSmaller,  // min(d, n)-sized, the default
  kOuter,    // Z Z^T, d x d
  kInner,    // Z^T Z, n x n
};

// Scale alpha = d / (n * eps2) used by the coding rate of n samples in d dims.
double RateScale(Index dim, Index samples, const RateConfig& cfg);

double CodingRate(const FeatureMatrix& z, const RateConfig& cfg = {},
                  GramForm form = GramForm::kSmaller);
double CodingRate(const Matrix& z, const RateConfig& cfg = {},
                  GramForm form = GramForm::kSmaller);

double HadamardUpperBound(const FeatureMatrix& z, const RateConfig& cfg = {});
double HadamardUpperBound(const Matrix& z, const RateConfig& cfg = {});

double ClassConditionalRate(const FeatureMatrix& z, int class_index,
                            const RateConfig& cfg = {});

// Negative values within kSdivClampTolerance are clamped to zero; anything
// more negative throws kNumerical.
inline constexpr double kSdivClampTolerance = 1e-8;
double SemanticDiversity(const FeatureMatrix& z, const RateConfig& cfg = {});

// Unclamped value, for diagnostics and tests.
double SemanticDiversityRaw(const FeatureMatrix& z, const RateConfig& cfg = {});

}  // namespace rddpp
