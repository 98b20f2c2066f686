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

// Task-oriented sample selection: RD-based quality scores, the
// quality-diversity kernel K_ij = phi_i phi_j <x_i, x_j>, per-round selectors
// and the baseline strategies.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rddpp/dpp.hpp"
#include "rddpp/feature_matrix.hpp"
#include "rddpp/ratedist.hpp"

namespace rddpp {

enum class QualityMode {
  kSemanticDiversity,  // phi(x) = sdiv([Z, x])
  kRateGain,           // phi(x) = R([Z, x])
};

enum class UncertaintyMode { kEntropy, kMinMargin };

enum class Strategy {
  kRdDppBimodal,
  kRdDppDiversityOnly,
  kMarginalRateGain,
  kEntropy,
  kMinMargin,
  kKCenter,
  kDppCoreset,
  kRandom,
};

enum class Mode { kDiversity, kUncertainty };

const char* ToString(QualityMode mode);
const char* ToString(UncertaintyMode mode);
const char* ToString(Strategy strategy);
const char* ToString(Mode mode);
QualityMode ParseQualityMode(const std::string& text);
UncertaintyMode ParseUncertaintyMode(const std::string& text);
Strategy ParseStrategy(const std::string& text);
Mode ParseMode(const std::string& text);

struct SchedulerConfig {
  double phi0 = 2.0;
  Index k = 5;
  Index budget = 0;  // total items including the initial set
  RateConfig rate;
  QualityMode quality_mode = QualityMode::kSemanticDiversity;
  UncertaintyMode uncertainty_mode = UncertaintyMode::kEntropy;
  Strategy strategy = Strategy::kRdDppBimodal;
  // Uniform subsample of the selected set used for quality scores; 0 = off.
  Index bootstrap_cap = 0;
  std::uint64_t seed = 0;

  void Validate() const;
};

// ---- quality scores -------------------------------------------------------

// Direct evaluation: forms [Z, x] (label appended in semantic mode) and
// evaluates sdiv or R on it.
double QualityScore(const FeatureMatrix& selected, const Eigen::Ref<const Vector>& x,
                    std::optional<int> label, QualityMode mode,
                    const RateConfig& rate = {});

// Scores many candidates against one selected set. Factorizes
// I + alpha Z Z^T (or its n x n dual) once per class and extends it by the
// candidate column with a rank-one determinant update; agrees with
// QualityScore to ~1e-9.
class QualityScorer {
 public:
  QualityScorer(const FeatureMatrix& selected, QualityMode mode, RateConfig rate = {});

  double Score(const Eigen::Ref<const Vector>& x, std::optional<int> label) const;

  // Scores of pool columns `candidates`, in that order.
  std::vector<double> ScoreAll(const FeatureMatrix& pool,
                               std::span<const Index> candidates) const;

 private:
  // log det(I + alpha [Z x][Z x]^T) for one fixed Z and alpha.
  class RankOneExtension {
   public:
    RankOneExtension() = default;
    RankOneExtension(const Matrix& z, double alpha);
    double base_log_det() const { return base_log_det_; }
    double Extended(const Eigen::Ref<const Vector>& x) const;

   private:
    Matrix z_;
    double alpha_ = 0.0;
    bool outer_form_ = true;
    Eigen::LLT<Matrix> llt_;
    double base_log_det_ = 0.0;
  };

  QualityMode mode_;
  RateConfig rate_;
  Index dim_ = 0;
  Index n_ = 0;
  bool labeled_ = false;
  RankOneExtension total_;
  std::vector<Index> class_counts_;
  std::vector<double> class_rates_;  // R_c of the selected set, bits
  std::vector<RankOneExtension> class_ext_;
};

// Subsamples columns of `selected` to `cap` (no-op when cap == 0 or n <= cap).
FeatureMatrix BootstrapSubsample(const FeatureMatrix& selected, Index cap,
                                 std::mt19937_64& rng);

// ---- quality-diversity kernel ---------------------------------------------

struct QdKernel {
  dpp::PsdKernel kernel;
  std::vector<double> quality;
  IndexList candidate_ids;
};

// K = diag(phi) G diag(phi); G is the raw candidate Gram in semantic mode and
// alpha * Z_B^T Z_B with alpha = d / ((n + 1) eps2) in rate-gain mode.
QdKernel BuildQdKernel(const FeatureMatrix& selected, const FeatureMatrix& pool,
                       std::span<const Index> candidates, QualityMode mode,
                       const RateConfig& rate = {});

// ---- round selectors ------------------------------------------------------

struct RoundChoice {
  IndexList chosen;  // pool indices
  bool rank_exhausted = false;
};

// Greedy MAP of the quality-diversity kernel over `candidates`.
RoundChoice SelectRoundDiversity(const FeatureMatrix& selected, const FeatureMatrix& pool,
                                 std::span<const Index> candidates, Index k,
                                 QualityMode mode, const RateConfig& rate = {});

// Top-k of the quality score alone (ablation baseline).
IndexList SelectMarginalRateGain(const FeatureMatrix& selected, const FeatureMatrix& pool,
                                 std::span<const Index> candidates, Index k,
                                 QualityMode mode, const RateConfig& rate = {});

// Shannon entropy in bits, 0 log 0 = 0.
double UncertaintyEntropy(std::span<const double> probs);
// p(1) - p(2).
double MinMargin(std::span<const double> probs);

// probs[i] is a (classes x samples) matrix of predicted distributions for
// candidates[i]; an item's score is the mean over its samples. Entropy picks
// the k largest, min-margin the k smallest; ties go to the lower pool index.
IndexList SelectRoundUncertainty(std::span<const Index> candidates,
                                 std::span<const Matrix> probs, Index k,
                                 UncertaintyMode mode);

// Farthest-first traversal from the covered set.
IndexList SelectKCenter(const FeatureMatrix& pool, std::span<const Index> candidates,
                        std::span<const Index> covered, Index k);

// Greedy MAP on the raw candidate Gram.
RoundChoice SelectDppCoreset(const FeatureMatrix& pool, std::span<const Index> candidates,
                             Index k);

// Uniform without replacement.
IndexList SelectRandom(std::span<const Index> candidates, Index k, std::mt19937_64& rng);

}  // namespace rddpp
