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

#include "rddpp/feature_matrix.hpp"

namespace rddpp::linalg {

// Relative tolerance below which a Gram eigenvalue counts as a PSD violation:
// lambda_min >= -kPsdTolerance * max(1, lambda_max).
inline constexpr double kPsdTolerance = 1e-8;

// (M + M^T) / 2
Matrix Symmetrized(const Matrix& m);

// Z Z^T (d x d) and Z^T Z (n x n), exactly symmetric.
Matrix OuterGram(const Matrix& z);
Matrix InnerGram(const Matrix& z);
// Gram in whichever form is smaller.
Matrix SmallGram(const Matrix& z);

// Natural log of det(I + alpha * G) for a PSD Gram G. Cholesky of the
// symmetrized matrix first; on failure, eigendecomposition of G with
// eigenvalues clamped at zero. Throws kNumerical if G is non-PSD beyond
// kPsdTolerance.
double LogDetIdentityPlus(const Matrix& gram, double alpha);

// Natural log det of a PSD matrix; -infinity when (numerically) singular.
double LogDetPsd(const Matrix& m);

// Extreme eigenvalues of a symmetric matrix.
struct EigenRange {
  double min = 0.0;
  double max = 0.0;
};
EigenRange SymmetricEigenRange(const Matrix& m);

}  // namespace rddpp::linalg
