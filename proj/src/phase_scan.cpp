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
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <random>

#include "rddpp/data.hpp"
#include "rddpp/dpp.hpp"
#include "rddpp/error.hpp"
#include "rddpp/linalg.hpp"
#include "rddpp/parallel.hpp"

namespace rddpp::data {
namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Greedy MAP order followed, after rank exhaustion, by the leftover items in
// descending order of their kernel diagonal (lowest index on ties).
IndexList GreedyOrder(const dpp::PsdKernel& kernel, Index* greedy_rank) {
  const Index n = kernel.size();
  const dpp::GreedyResult greedy = dpp::GreedyMap(kernel, n);
  *greedy_rank = greedy.indices.size();
  IndexList order = greedy.indices;
  std::vector<char> placed(n, 0);
  for (Index i : order) placed[i] = 1;
  IndexList rest;
  for (Index i = 0; i < n; ++i) {
    if (!placed[i]) rest.push_back(i);
  }
  std::stable_sort(rest.begin(), rest.end(),
                   [&](Index a, Index b) { return kernel(a, a) > kernel(b, b); });
  order.insert(order.end(), rest.begin(), rest.end());
  return order;
}

}  // namespace

std::vector<double> PrefixUpperBounds(const Matrix& z, const IndexList& order,
                                      const RateConfig& rate) {
  rate.Validate();
  const Index n = static_cast<Index>(z.cols());
  if (order.size() != n) {
    Fail(ErrorKind::kInvalidArgument, "ordering must cover every column");
  }
  std::vector<char> seen(n, 0);
  for (Index j : order) {
    if (j >= n) Fail(ErrorKind::kInvalidArgument, "ordering index out of range");
    if (seen[j]) Fail(ErrorKind::kInvalidArgument, "ordering repeats column " + std::to_string(j));
    seen[j] = 1;
  }
  const double d = static_cast<double>(z.rows());
  std::vector<double> curve(n);
  Vector energy = Vector::Zero(z.rows());
  for (Index k = 1; k <= n; ++k) {
    const Index j = order[k - 1];
    energy += z.col(static_cast<Eigen::Index>(j)).cwiseAbs2();
    if (k == n) break;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < energy.size(); ++i) {
      acc += std::log2(d / rate.eps2 * energy[i] / static_cast<double>(k) + 1.0);
    }
    curve[k - 1] = acc;
  }
  curve[n - 1] = HadamardUpperBound(z, rate);
  return curve;
}

PhaseCurve PhaseScan(const Matrix& z, const PhaseScanOptions& options) {
  options.rate.Validate();
  const Index n = static_cast<Index>(z.cols());
  const Index d = static_cast<Index>(z.rows());
  if (n < 2) Fail(ErrorKind::kInvalidArgument, "phase scan needs at least 2 samples");
  if (options.shuffles == 0) Fail(ErrorKind::kInvalidArgument, "shuffles must be >= 1");
  if (options.exact_stride == 0) {
    Fail(ErrorKind::kInvalidArgument, "exact_stride must be >= 1");
  }

  PhaseCurve curve;
  const double alpha = RateScale(d, n, options.rate);
  curve.greedy_order = GreedyOrder(dpp::GramKernel(z, alpha), &curve.greedy_rank);
  curve.greedy_upper_bound = PrefixUpperBounds(z, curve.greedy_order, options.rate);

  // Exact rate of the greedy prefixes. While k <= d the k x k Gram of the
  // reordered columns is the cheaper form and its leading blocks are shared.
  const double nan = std::numeric_limits<double>::quiet_NaN();
  curve.greedy_exact_rate.assign(n, nan);
  Matrix ordered(z.rows(), z.cols());
  for (Index k = 0; k < n; ++k) {
    ordered.col(static_cast<Eigen::Index>(k)) =
        z.col(static_cast<Eigen::Index>(curve.greedy_order[k]));
  }
  const Matrix inner = linalg::InnerGram(ordered.leftCols(static_cast<Eigen::Index>(
      std::min(n, d))));
  for (Index k = 1; k <= n; ++k) {
    if (k != 1 && k != n && k % options.exact_stride != 0) continue;
    if (k == n) {
      curve.greedy_exact_rate[k - 1] = CodingRate(z, options.rate);
    } else if (k <= d) {
      const auto kk = static_cast<Eigen::Index>(k);
      curve.greedy_exact_rate[k - 1] =
          0.5 * linalg::LogDetIdentityPlus(inner.topLeftCorner(kk, kk),
                                           RateScale(d, k, options.rate)) /
          std::log(2.0);
    } else {
      curve.greedy_exact_rate[k - 1] =
          CodingRate(Matrix(ordered.leftCols(static_cast<Eigen::Index>(k))), options.rate);
    }
  }

  // Random orderings, each with its own derived seed.
  std::vector<std::vector<double>> random(options.shuffles);
  ParallelFor(options.shuffles, [&](Index s) {
    std::mt19937_64 rng(SplitMix64(options.seed + s));
    IndexList order(n);
    std::iota(order.begin(), order.end(), Index{0});
    std::shuffle(order.begin(), order.end(), rng);
    random[s] = PrefixUpperBounds(z, order, options.rate);
  });
  curve.random_mean.assign(n, 0.0);
  curve.random_std.assign(n, 0.0);
  const double count = static_cast<double>(options.shuffles);
  for (Index k = 0; k < n; ++k) {
    // Offsets from the first shuffle keep identical values exactly identical.
    const double base = random[0][k];
    double shift = 0.0;
    for (const auto& r : random) shift += r[k] - base;
    const double mean_shift = shift / count;
    curve.random_mean[k] = base + mean_shift;
    if (options.shuffles > 1) {
      double ss = 0.0;
      for (const auto& r : random) {
        const double dev = (r[k] - base) - mean_shift;
        ss += dev * dev;
      }
      curve.random_std[k] = std::sqrt(ss / (count - 1.0));
    }
  }

  const auto peak =
      std::max_element(curve.greedy_upper_bound.begin(), curve.greedy_upper_bound.end());
  curve.alpha = static_cast<Index>(peak - curve.greedy_upper_bound.begin()) + 1;
  return curve;
}

}  // namespace rddpp::data
