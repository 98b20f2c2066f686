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

#include <algorithm>
#include <limits>
#include <random>
#include <string>

#include "rddpp/data.hpp"
#include "rddpp/error.hpp"
#include "rddpp/simd/kernels.hpp"

namespace rddpp::data {
namespace {

std::span<const double> Col(const Matrix& m, Index j) {
  return {m.col(static_cast<Eigen::Index>(j)).data(), static_cast<Index>(m.rows())};
}

Matrix SeedPlusPlus(const Matrix& x, Index n_clusters, std::mt19937_64& rng) {
  const Index n = static_cast<Index>(x.cols());
  Matrix centers(x.rows(), static_cast<Eigen::Index>(n_clusters));
  std::uniform_int_distribution<Index> first(0, n - 1);
  Index pick = first(rng);
  centers.col(0) = x.col(static_cast<Eigen::Index>(pick));

  std::vector<double> dist(n);
  std::vector<char> used(n, 0);
  used[pick] = 1;
  for (Index j = 0; j < n; ++j) dist[j] = simd::SquaredDistance(Col(x, j), Col(centers, 0));

  for (Index c = 1; c < n_clusters; ++c) {
    double total = 0.0;
    for (Index j = 0; j < n; ++j) total += dist[j];
    if (total > 0.0) {
      std::uniform_real_distribution<double> u(0.0, total);
      const double target = u(rng);
      double acc = 0.0;
      pick = n;
      for (Index j = 0; j < n; ++j) {
        if (dist[j] <= 0.0) continue;
        acc += dist[j];
        pick = j;
        if (acc >= target) break;
      }
    } else {
      // Every point coincides with a center; take an unused one.
      std::vector<Index> free;
      for (Index j = 0; j < n; ++j) {
        if (!used[j]) free.push_back(j);
      }
      std::uniform_int_distribution<Index> any(0, free.size() - 1);
      pick = free[any(rng)];
    }
    used[pick] = 1;
    centers.col(static_cast<Eigen::Index>(c)) = x.col(static_cast<Eigen::Index>(pick));
    for (Index j = 0; j < n; ++j) {
      dist[j] = std::min(dist[j], simd::SquaredDistance(Col(x, j), Col(centers, c)));
    }
  }
  return centers;
}

}  // namespace

KMeansResult KMeans(const FeatureMatrix& z, Index n_clusters, std::uint64_t seed,
                    Index max_iter) {
  const Matrix& x = z.data();
  const Index n = z.size();
  if (n == 0) Fail(ErrorKind::kInvalidArgument, "k-means on an empty matrix");
  if (n_clusters == 0 || n_clusters > n) {
    Fail(ErrorKind::kInvalidArgument, "k-means needs 1 <= n_clusters <= n (n_clusters=" +
                                          std::to_string(n_clusters) + ", n=" +
                                          std::to_string(n) + ")");
  }
  KMeansResult result;
  result.assignment.assign(n, 0);

  bool identical = true;
  for (Index j = 1; j < n && identical; ++j) {
    identical = simd::SquaredDistance(Col(x, j), Col(x, 0)) == 0.0;
  }
  if (identical) {
    result.centroids = x.col(0);
    result.degenerate = true;
    result.converged = true;
    result.effective_clusters = 1;
    return result;
  }

  std::mt19937_64 rng(seed);
  Matrix centers = SeedPlusPlus(x, n_clusters, rng);
  std::vector<int> assign(n, -1);
  std::vector<Index> counts(n_clusters, 0);

  for (Index iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    for (Index j = 0; j < n; ++j) {
      Index best = 0;
      double best_dist = std::numeric_limits<double>::infinity();
      for (Index c = 0; c < n_clusters; ++c) {
        const double dist = simd::SquaredDistance(Col(x, j), Col(centers, c));
        if (dist < best_dist) {
          best_dist = dist;
          best = c;
        }
      }
      if (assign[j] != static_cast<int>(best)) {
        assign[j] = static_cast<int>(best);
        changed = true;
      }
    }

    // Split the largest cluster into any empty one.
    while (true) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int a : assign) ++counts[static_cast<Index>(a)];
      const auto empty = std::find(counts.begin(), counts.end(), Index{0});
      if (empty == counts.end()) break;
      const Index largest = static_cast<Index>(
          std::max_element(counts.begin(), counts.end()) - counts.begin());
      Index far = n;
      double far_dist = -1.0;
      for (Index j = 0; j < n; ++j) {
        if (assign[j] != static_cast<int>(largest)) continue;
        const double dist = simd::SquaredDistance(Col(x, j), Col(centers, largest));
        if (dist > far_dist) {
          far_dist = dist;
          far = j;
        }
      }
      const Index target = static_cast<Index>(empty - counts.begin());
      assign[far] = static_cast<int>(target);
      centers.col(static_cast<Eigen::Index>(target)) = x.col(static_cast<Eigen::Index>(far));
      changed = true;
    }

    centers.setZero();
    for (Index j = 0; j < n; ++j) {
      centers.col(assign[j]) += x.col(static_cast<Eigen::Index>(j));
    }
    for (Index c = 0; c < n_clusters; ++c) {
      centers.col(static_cast<Eigen::Index>(c)) /= static_cast<double>(counts[c]);
    }
    result.iterations = iter + 1;
    if (!changed) {
      result.converged = true;
      break;
    }
  }
  result.assignment = assign;
  result.centroids = centers;
  result.effective_clusters = n_clusters;
  return result;
}

}  // namespace rddpp::data
