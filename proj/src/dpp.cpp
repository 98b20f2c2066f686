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

#include "rddpp/dpp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rddpp/error.hpp"
#include "rddpp/linalg.hpp"
#include "rddpp/simd/kernels.hpp"

namespace rddpp::dpp {

PsdKernel::PsdKernel(Matrix matrix, Check check) {
  if (matrix.rows() != matrix.cols()) {
    Fail(ErrorKind::kInvalidInput, "kernel must be square");
  }
  if (!matrix.allFinite()) Fail(ErrorKind::kInvalidInput, "non-finite kernel entries");
  matrix_ = linalg::Symmetrized(matrix);
  if (check == Check::kFull && matrix_.rows() > 0) {
    const auto range = linalg::SymmetricEigenRange(matrix_);
    if (range.min < -linalg::kPsdTolerance * std::max(1.0, range.max)) {
      Fail(ErrorKind::kNumerical, "kernel is not positive semi-definite (min eigenvalue " +
                                      std::to_string(range.min) + ")");
    }
  }
}

PsdKernel GramKernel(const Matrix& z, double alpha) {
  if (!(alpha > 0.0)) Fail(ErrorKind::kInvalidArgument, "alpha must be positive");
  if (!z.allFinite()) Fail(ErrorKind::kInvalidInput, "non-finite feature entries");
  return PsdKernel(alpha * linalg::InnerGram(z), PsdKernel::Check::kSymmetrizeOnly);
}

PsdKernel GramKernel(const FeatureMatrix& z, double alpha) {
  return GramKernel(z.data(), alpha);
}

double LogNormalizer(const PsdKernel& kernel) {
  if (kernel.size() == 0) Fail(ErrorKind::kInvalidArgument, "empty kernel");
  return linalg::LogDetIdentityPlus(kernel.matrix(), 1.0);
}

double Normalizer(const PsdKernel& kernel) { return std::exp(LogNormalizer(kernel)); }

double SubsetLogDet(const PsdKernel& kernel, std::span<const Index> subset) {
  const auto n = static_cast<Eigen::Index>(subset.size());
  Matrix sub(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    if (subset[a] >= kernel.size()) {
      Fail(ErrorKind::kInvalidArgument,
           "subset index " + std::to_string(subset[a]) + " out of range");
    }
    for (Eigen::Index b = 0; b < n; ++b) {
      if (a != b && subset[a] == subset[b]) {
        Fail(ErrorKind::kInvalidArgument, "subset indices must be distinct");
      }
      sub(a, b) = kernel(subset[a], subset[b]);
    }
  }
  return linalg::LogDetPsd(sub);
}

GreedyResult GreedyMap(const PsdKernel& kernel, Index k) {
  const Index m = kernel.size();
  if (k == 0 || k > m) {
    Fail(ErrorKind::kInvalidArgument, "greedy MAP needs 1 <= k <= m (k=" +
                                          std::to_string(k) + ", m=" + std::to_string(m) + ")");
  }
  GreedyResult result;
  result.k = k;

  // Row i of `factors` holds the first t entries of candidate i's row in the
  // Cholesky factor of L restricted to selected + {i}.
  std::vector<double> factors(m * k, 0.0);
  std::vector<double> residual(m);
  std::vector<char> taken(m, 0);
  for (Index i = 0; i < m; ++i) residual[i] = kernel(i, i);

  for (Index t = 0; t < k; ++t) {
    Index best = m;
    for (Index i = 0; i < m; ++i) {
      if (taken[i]) continue;
      if (best == m || residual[i] - residual[best] > 1e-12 * std::abs(residual[best])) {
        best = i;
      }
    }
    if (best == m || residual[best] < kRankExhaustedGain) {
      result.rank_exhausted = true;
      break;
    }
    taken[best] = 1;
    result.indices.push_back(best);
    result.marginal_gains.push_back(residual[best]);
    result.marginal_log_gains.push_back(std::log(residual[best]));
    if (t + 1 == k) break;

    const double pivot = std::sqrt(residual[best]);
    const double* best_row = &factors[best * k];
    for (Index i = 0; i < m; ++i) {
      if (taken[i]) continue;
      double* row = &factors[i * k];
      const double e = (kernel(best, i) - simd::Dot({best_row, t}, {row, t})) / pivot;
      row[t] = e;
      residual[i] -= e * e;
    }
  }
  return result;
}

IndexList ExactMap(const PsdKernel& kernel, Index k) {
  const Index m = kernel.size();
  if (k == 0 || k > m) {
    Fail(ErrorKind::kInvalidArgument, "exact MAP needs 1 <= k <= m");
  }
  if (m > kExactMapMaxItems || k > kExactMapMaxK) {
    Fail(ErrorKind::kInstanceTooLarge,
         "exact MAP limited to m <= " + std::to_string(kExactMapMaxItems) +
             " and k <= " + std::to_string(kExactMapMaxK));
  }
  IndexList current(k);
  for (Index i = 0; i < k; ++i) current[i] = i;
  IndexList best = current;
  double best_value = SubsetLogDet(kernel, current);

  // Lexicographic enumeration of k-combinations of {0..m-1}.
  while (true) {
    Index pos = k;
    while (pos > 0 && current[pos - 1] == m - k + pos - 1) --pos;
    if (pos == 0) break;
    ++current[pos - 1];
    for (Index i = pos; i < k; ++i) current[i] = current[i - 1] + 1;
    const double value = SubsetLogDet(kernel, current);
    if (value > best_value + 1e-12) {
      best_value = value;
      best = current;
    }
  }
  return best;
}

}  // namespace rddpp::dpp
