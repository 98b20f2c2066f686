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
#include <iostream>
#include <numbers>
#include <string>

#include "rddpp/error.hpp"
#include "rddpp/linalg.hpp"
#include "rddpp/selection.hpp"

namespace rddpp {
namespace {

double ClampSdiv(double raw) {
  if (raw >= 0.0) return raw;
  if (raw >= -kSdivClampTolerance) {
    if (raw < -1e-12) {
      std::clog << "rddpp: clamping semantic diversity " << raw << " to 0\n";
    }
    return 0.0;
  }
  Fail(ErrorKind::kNumerical, "semantic diversity " + std::to_string(raw) +
                                  " below tolerance");
}

}  // namespace

double QualityScore(const FeatureMatrix& selected, const Eigen::Ref<const Vector>& x,
                    std::optional<int> label, QualityMode mode, const RateConfig& rate) {
  if (static_cast<Index>(x.size()) != selected.dim()) {
    Fail(ErrorKind::kInvalidInput, "candidate dimension " + std::to_string(x.size()) +
                                       " does not match selected dimension " +
                                       std::to_string(selected.dim()));
  }
  if (mode == QualityMode::kSemanticDiversity) {
    if (!label) Fail(ErrorKind::kInvalidInput, "semantic quality needs a candidate label");
    if (!selected.has_labels()) {
      Fail(ErrorKind::kInvalidInput, "semantic quality needs labeled selections");
    }
    const FeatureMatrix extended = selected.AppendColumn(x, label);
    return SemanticDiversity(extended, rate);
  }
  const FeatureMatrix extended =
      selected.has_labels() ? selected.AppendColumn(x, label.value_or(0))
                            : selected.AppendColumn(x, std::nullopt);
  return CodingRate(extended, rate);
}

QualityScorer::RankOneExtension::RankOneExtension(const Matrix& z, double alpha)
    : alpha_(alpha) {
  if (z.cols() == 0) return;
  outer_form_ = z.rows() <= z.cols();
  Matrix shifted;
  if (outer_form_) {
    shifted = alpha * linalg::OuterGram(z);
  } else {
    z_ = z;
    shifted = alpha * linalg::InnerGram(z);
  }
  shifted.diagonal().array() += 1.0;
  llt_.compute(shifted);
  if (llt_.info() != Eigen::Success) {
    Fail(ErrorKind::kNumerical, "factorization of I + alpha G failed");
  }
  base_log_det_ = 2.0 * llt_.matrixLLT().diagonal().array().log().sum();
  if (outer_form_) z_.resize(z.rows(), 0);
}

double QualityScorer::RankOneExtension::Extended(const Eigen::Ref<const Vector>& x) const {
  const double xx = x.squaredNorm();
  if (llt_.rows() == 0) return std::log1p(alpha_ * xx);
  double q = 0.0;
  if (outer_form_) {
    // x^T (I + a Z Z^T)^{-1} x
    q = llt_.matrixL().solve(x).squaredNorm();
  } else {
    // Same quantity through the n x n dual (Woodbury).
    const Vector b = z_.transpose() * x;
    q = xx - alpha_ * llt_.matrixL().solve(b).squaredNorm();
  }
  return base_log_det_ + std::log1p(alpha_ * std::max(q, 0.0));
}

QualityScorer::QualityScorer(const FeatureMatrix& selected, QualityMode mode,
                             RateConfig rate)
    : mode_(mode),
      rate_(rate),
      dim_(selected.dim()),
      n_(selected.size()),
      labeled_(selected.has_labels()) {
  rate_.Validate();
  if (dim_ == 0) Fail(ErrorKind::kInvalidInput, "feature dimension must be positive");
  const double d = static_cast<double>(dim_);
  total_ = RankOneExtension(selected.data(),
                            d / (static_cast<double>(n_ + 1) * rate_.eps2));
  if (mode_ != QualityMode::kSemanticDiversity) return;
  if (!labeled_) Fail(ErrorKind::kInvalidInput, "semantic quality needs labeled selections");

  class_counts_ = selected.ClassCounts();
  const Index classes = class_counts_.size();
  class_rates_.assign(classes, 0.0);
  class_ext_.resize(classes);
  for (Index c = 0; c < classes; ++c) {
    const Index count = class_counts_[c];
    const double alpha_plus = d / (static_cast<double>(count + 1) * rate_.eps2);
    if (count == 0) {
      class_ext_[c] = RankOneExtension(Matrix(selected.dim(), 0), alpha_plus);
      continue;
    }
    const Matrix members = selected.Select(selected.ClassMembers(static_cast<int>(c))).data();
    class_rates_[c] = CodingRate(members, rate_);
    class_ext_[c] = RankOneExtension(members, alpha_plus);
  }
}

double QualityScorer::Score(const Eigen::Ref<const Vector>& x,
                            std::optional<int> label) const {
  if (static_cast<Index>(x.size()) != dim_) {
    Fail(ErrorKind::kInvalidInput, "candidate dimension " + std::to_string(x.size()) +
                                       " does not match selected dimension " +
                                       std::to_string(dim_));
  }
  if (!x.allFinite()) Fail(ErrorKind::kInvalidInput, "non-finite candidate entries");
  const double total_bits = 0.5 * total_.Extended(x) / std::numbers::ln2;
  if (mode_ == QualityMode::kRateGain) return total_bits;

  if (!label) Fail(ErrorKind::kInvalidInput, "semantic quality needs a candidate label");
  if (*label < 0) Fail(ErrorKind::kInvalidInput, "negative candidate label");
  const auto y = static_cast<Index>(*label);
  const Index own = y < class_counts_.size() ? class_counts_[y] : 0;
  if (own == n_) return 0.0;  // [Z, x] is a single class

  const double n_plus = static_cast<double>(n_ + 1);
  double weighted = 0.0;
  for (Index c = 0; c < class_counts_.size(); ++c) {
    if (c == y || class_counts_[c] == 0) continue;
    weighted += static_cast<double>(class_counts_[c]) / n_plus * class_rates_[c];
  }
  double own_log_det = 0.0;
  if (y < class_ext_.size()) {
    own_log_det = class_ext_[y].Extended(x);
  } else {
    own_log_det = std::log1p(static_cast<double>(dim_) / rate_.eps2 * x.squaredNorm());
  }
  weighted += static_cast<double>(own + 1) / n_plus * 0.5 * own_log_det / std::numbers::ln2;
  return ClampSdiv(total_bits - weighted);
}

std::vector<double> QualityScorer::ScoreAll(const FeatureMatrix& pool,
                                            std::span<const Index> candidates) const {
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (Index c : candidates) {
    if (c >= pool.size()) {
      Fail(ErrorKind::kInvalidArgument, "candidate index " + std::to_string(c) +
                                            " out of range");
    }
    std::optional<int> label;
    if (pool.has_labels()) label = pool.label(c);
    scores.push_back(Score(pool.column(c), label));
  }
  return scores;
}

FeatureMatrix BootstrapSubsample(const FeatureMatrix& selected, Index cap,
                                 std::mt19937_64& rng) {
  if (cap == 0 || selected.size() <= cap) return selected;
  IndexList all(selected.size());
  for (Index i = 0; i < all.size(); ++i) all[i] = i;
  IndexList keep = SelectRandom(all, cap, rng);
  std::sort(keep.begin(), keep.end());
  return selected.Select(keep);
}

QdKernel BuildQdKernel(const FeatureMatrix& selected, const FeatureMatrix& pool,
                       std::span<const Index> candidates, QualityMode mode,
                       const RateConfig& rate) {
  if (candidates.empty()) Fail(ErrorKind::kInvalidArgument, "no candidates");
  if (pool.dim() != selected.dim()) {
    Fail(ErrorKind::kInvalidInput, "pool and selected dimensions differ");
  }
  const QualityScorer scorer(selected, mode, rate);
  QdKernel out;
  out.quality = scorer.ScoreAll(pool, candidates);
  out.candidate_ids.assign(candidates.begin(), candidates.end());

  Matrix gram = linalg::InnerGram(pool.Select(candidates).data());
  if (mode == QualityMode::kRateGain) {
    gram *= static_cast<double>(selected.dim()) /
            (static_cast<double>(selected.size() + 1) * rate.eps2);
  }
  const Eigen::Map<const Vector> phi(out.quality.data(),
                                     static_cast<Eigen::Index>(out.quality.size()));
  Matrix k = phi.asDiagonal() * gram * phi.asDiagonal();
  out.kernel = dpp::PsdKernel(std::move(k));
  return out;
}

}  // namespace rddpp
