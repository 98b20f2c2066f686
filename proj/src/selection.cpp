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

#include "rddpp/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rddpp/error.hpp"

namespace rddpp {
namespace {

constexpr double kDistributionTolerance = 1e-6;

void ValidateDistribution(std::span<const double> probs) {
  if (probs.empty()) Fail(ErrorKind::kInvalidInput, "empty probability vector");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      Fail(ErrorKind::kInvalidInput, "probabilities must be finite and non-negative");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kDistributionTolerance) {
    Fail(ErrorKind::kInvalidInput, "probabilities sum to " + std::to_string(sum));
  }
}

// Indices into `scores` ordered best-first; ties keep the lower position.
std::vector<Index> RankPositions(const std::vector<double>& scores, bool descending) {
  std::vector<Index> order(scores.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return descending ? scores[a] > scores[b] : scores[a] < scores[b];
  });
  return order;
}

// Candidates sorted ascending, paired with their original positions, so that
// "ties go to the lower pool index" holds whatever order callers pass.
std::vector<Index> AscendingPositions(std::span<const Index> candidates) {
  std::vector<Index> order(candidates.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return candidates[a] < candidates[b]; });
  return order;
}

}  // namespace

const char* ToString(QualityMode mode) {
  return mode == QualityMode::kSemanticDiversity ? "semantic-diversity" : "rate-gain";
}

const char* ToString(UncertaintyMode mode) {
  return mode == UncertaintyMode::kEntropy ? "entropy" : "min-margin";
}

const char* ToString(Strategy strategy) {
  switch (strategy) {
    case Strategy::kRdDppBimodal:
      return "rd-dpp";
    case Strategy::kRdDppDiversityOnly:
      return "rd-dpp-diversity-only";
    case Strategy::kMarginalRateGain:
      return "marginal-rate-gain";
    case Strategy::kEntropy:
      return "entropy";
    case Strategy::kMinMargin:
      return "min-margin";
    case Strategy::kKCenter:
      return "k-center";
    case Strategy::kDppCoreset:
      return "dpp-coreset";
    case Strategy::kRandom:
      return "random";
  }
  return "unknown";
}

const char* ToString(Mode mode) {
  return mode == Mode::kDiversity ? "diversity" : "uncertainty";
}

QualityMode ParseQualityMode(const std::string& text) {
  if (text == "semantic-diversity" || text == "semantic") {
    return QualityMode::kSemanticDiversity;
  }
  if (text == "rate-gain") return QualityMode::kRateGain;
  Fail(ErrorKind::kInvalidArgument, "unknown quality mode '" + text + "'");
}

UncertaintyMode ParseUncertaintyMode(const std::string& text) {
  if (text == "entropy") return UncertaintyMode::kEntropy;
  if (text == "min-margin" || text == "margin") return UncertaintyMode::kMinMargin;
  Fail(ErrorKind::kInvalidArgument, "unknown uncertainty mode '" + text + "'");
}

Strategy ParseStrategy(const std::string& text) {
  for (Strategy s : {Strategy::kRdDppBimodal, Strategy::kRdDppDiversityOnly,
                     Strategy::kMarginalRateGain, Strategy::kEntropy, Strategy::kMinMargin,
                     Strategy::kKCenter, Strategy::kDppCoreset, Strategy::kRandom}) {
    if (text == ToString(s)) return s;
  }
  Fail(ErrorKind::kInvalidArgument, "unknown strategy '" + text + "'");
}

Mode ParseMode(const std::string& text) {
  if (text == "diversity") return Mode::kDiversity;
  if (text == "uncertainty") return Mode::kUncertainty;
  Fail(ErrorKind::kParse, "unknown mode '" + text + "'");
}

void SchedulerConfig::Validate() const {
  rate.Validate();
  if (std::isnan(phi0)) Fail(ErrorKind::kInvalidArgument, "phi0 must not be NaN");
  if (k == 0) Fail(ErrorKind::kInvalidArgument, "round size k must be >= 1");
}

RoundChoice SelectRoundDiversity(const FeatureMatrix& selected, const FeatureMatrix& pool,
                                 std::span<const Index> candidates, Index k,
                                 QualityMode mode, const RateConfig& rate) {
  if (k == 0 || k > candidates.size()) {
    Fail(ErrorKind::kInvalidArgument, "diversity round needs 1 <= k <= |candidates|");
  }
  const QdKernel qd = BuildQdKernel(selected, pool, candidates, mode, rate);
  const dpp::GreedyResult greedy = dpp::GreedyMap(qd.kernel, k);
  RoundChoice out;
  out.rank_exhausted = greedy.rank_exhausted;
  for (Index pos : greedy.indices) out.chosen.push_back(qd.candidate_ids[pos]);
  return out;
}

IndexList SelectMarginalRateGain(const FeatureMatrix& selected, const FeatureMatrix& pool,
                                 std::span<const Index> candidates, Index k,
                                 QualityMode mode, const RateConfig& rate) {
  if (k == 0 || k > candidates.size()) {
    Fail(ErrorKind::kInvalidArgument, "marginal-rate-gain round needs 1 <= k <= |candidates|");
  }
  const std::vector<Index> ascending = AscendingPositions(candidates);
  IndexList sorted;
  for (Index pos : ascending) sorted.push_back(candidates[pos]);
  const QualityScorer scorer(selected, mode, rate);
  const std::vector<double> scores = scorer.ScoreAll(pool, sorted);
  const std::vector<Index> order = RankPositions(scores, /*descending=*/true);
  IndexList chosen;
  for (Index i = 0; i < k; ++i) chosen.push_back(sorted[order[i]]);
  return chosen;
}

double UncertaintyEntropy(std::span<const double> probs) {
  ValidateDistribution(probs);
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return std::max(h, 0.0);
}

double MinMargin(std::span<const double> probs) {
  if (probs.size() < 2) Fail(ErrorKind::kInvalidInput, "min-margin needs >= 2 classes");
  ValidateDistribution(probs);
  double first = -1.0;
  double second = -1.0;
  for (double p : probs) {
    if (p > first) {
      second = first;
      first = p;
    } else if (p > second) {
      second = p;
    }
  }
  return first - second;
}

IndexList SelectRoundUncertainty(std::span<const Index> candidates,
                                 std::span<const Matrix> probs, Index k,
                                 UncertaintyMode mode) {
  if (probs.size() != candidates.size()) {
    Fail(ErrorKind::kInvalidInput, "missing predicted distributions: " +
                                       std::to_string(probs.size()) + " for " +
                                       std::to_string(candidates.size()) + " candidates");
  }
  if (k > candidates.size()) {
    Fail(ErrorKind::kInvalidArgument, "uncertainty round needs k <= |candidates|");
  }
  const std::vector<Index> ascending = AscendingPositions(candidates);
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (Index pos : ascending) {
    const Matrix& p = probs[pos];
    if (p.cols() == 0) {
      Fail(ErrorKind::kInvalidInput, "candidate " + std::to_string(candidates[pos]) +
                                         " has no predicted distributions");
    }
    double acc = 0.0;
    for (Eigen::Index s = 0; s < p.cols(); ++s) {
      const std::span<const double> col(p.col(s).data(), static_cast<Index>(p.rows()));
      acc += mode == UncertaintyMode::kEntropy ? UncertaintyEntropy(col) : MinMargin(col);
    }
    scores.push_back(acc / static_cast<double>(p.cols()));
  }
  const std::vector<Index> order =
      RankPositions(scores, /*descending=*/mode == UncertaintyMode::kEntropy);
  IndexList chosen;
  for (Index i = 0; i < k; ++i) chosen.push_back(candidates[ascending[order[i]]]);
  return chosen;
}

}  // namespace rddpp
