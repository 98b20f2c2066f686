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
#include <string>

#include "rddpp/error.hpp"
#include "rddpp/selection.hpp"
#include "rddpp/simd/kernels.hpp"

namespace rddpp {
namespace {

std::span<const double> ColumnSpan(const FeatureMatrix& pool, Index j) {
  return {pool.data().col(static_cast<Eigen::Index>(j)).data(), pool.dim()};
}

}  // namespace

IndexList SelectKCenter(const FeatureMatrix& pool, std::span<const Index> candidates,
                        std::span<const Index> covered, Index k) {
  if (candidates.empty()) Fail(ErrorKind::kInvalidArgument, "k-center on an empty pool");
  if (k > candidates.size()) {
    Fail(ErrorKind::kInvalidArgument, "k-center needs k <= |candidates|");
  }
  IndexList cands(candidates.begin(), candidates.end());
  std::sort(cands.begin(), cands.end());
  for (Index c : cands) {
    if (c >= pool.size()) Fail(ErrorKind::kInvalidArgument, "candidate index out of range");
  }

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> nearest(cands.size(), inf);
  for (Index c : covered) {
    if (c >= pool.size()) Fail(ErrorKind::kInvalidArgument, "covered index out of range");
    for (Index i = 0; i < cands.size(); ++i) {
      nearest[i] = std::min(nearest[i], simd::SquaredDistance(ColumnSpan(pool, cands[i]),
                                                              ColumnSpan(pool, c)));
    }
  }
  // Nothing covered yet: seed with the candidate farthest from the centroid.
  if (covered.empty()) {
    Vector centroid = Vector::Zero(static_cast<Eigen::Index>(pool.dim()));
    for (Index c : cands) centroid += pool.column(c);
    centroid /= static_cast<double>(cands.size());
    const std::span<const double> center(centroid.data(), pool.dim());
    for (Index i = 0; i < cands.size(); ++i) {
      nearest[i] = simd::SquaredDistance(ColumnSpan(pool, cands[i]), center);
    }
  }

  IndexList chosen;
  std::vector<char> taken(cands.size(), 0);
  for (Index step = 0; step < k; ++step) {
    Index best = cands.size();
    for (Index i = 0; i < cands.size(); ++i) {
      if (taken[i]) continue;
      if (best == cands.size() || nearest[i] > nearest[best]) best = i;
    }
    taken[best] = 1;
    chosen.push_back(cands[best]);
    for (Index i = 0; i < cands.size(); ++i) {
      if (taken[i]) continue;
      const double dist =
          simd::SquaredDistance(ColumnSpan(pool, cands[i]), ColumnSpan(pool, cands[best]));
      // The centroid seed distances are not coverage distances; reset them.
      nearest[i] = (step == 0 && covered.empty()) ? dist : std::min(nearest[i], dist);
    }
  }
  return chosen;
}

RoundChoice SelectDppCoreset(const FeatureMatrix& pool, std::span<const Index> candidates,
                             Index k) {
  if (candidates.empty()) Fail(ErrorKind::kInvalidArgument, "DPP coreset on an empty pool");
  IndexList cands(candidates.begin(), candidates.end());
  std::sort(cands.begin(), cands.end());
  const dpp::PsdKernel kernel = dpp::GramKernel(pool.Select(cands), 1.0);
  const dpp::GreedyResult greedy = dpp::GreedyMap(kernel, k);
  RoundChoice out;
  out.rank_exhausted = greedy.rank_exhausted;
  for (Index pos : greedy.indices) out.chosen.push_back(cands[pos]);
  return out;
}

IndexList SelectRandom(std::span<const Index> candidates, Index k, std::mt19937_64& rng) {
  if (k > candidates.size()) {
    Fail(ErrorKind::kInvalidArgument, "cannot draw " + std::to_string(k) + " of " +
                                          std::to_string(candidates.size()) + " items");
  }
  IndexList items(candidates.begin(), candidates.end());
  // Partial Fisher-Yates.
  for (Index i = 0; i < k; ++i) {
    std::uniform_int_distribution<Index> pick(i, items.size() - 1);
    std::swap(items[i], items[pick(rng)]);
  }
  items.resize(k);
  return items;
}

}  // namespace rddpp
