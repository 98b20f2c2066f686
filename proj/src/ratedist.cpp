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

#include "rddpp/ratedist.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <string>

#include "rddpp/error.hpp"
#include "rddpp/linalg.hpp"

namespace rddpp {
namespace {

void RequireNonEmpty(const Matrix& z) {
  if (z.rows() == 0 || z.cols() == 0) {
    Fail(ErrorKind::kInvalidInput, "feature matrix must have d >= 1 and n >= 1");
  }
}

void RequireFinite(const Matrix& z) {
  if (!z.allFinite()) Fail(ErrorKind::kInvalidInput, "non-finite feature entries");
}

void RequireLabels(const FeatureMatrix& z) {
  if (!z.has_labels()) {
    Fail(ErrorKind::kInvalidInput, "class labels are required");
  }
}

}  // namespace

void RateConfig::Validate() const {
  if (!(eps2 > 0.0) || !std::isfinite(eps2)) {
    Fail(ErrorKind::kInvalidArgument, "eps2 must be a positive finite number");
  }
}

double RateScale(Index dim, Index samples, const RateConfig& cfg) {
  return static_cast<double>(dim) / (static_cast<double>(samples) * cfg.eps2);
}

double CodingRate(const Matrix& z, const RateConfig& cfg, GramForm form) {
  cfg.Validate();
  RequireNonEmpty(z);
  RequireFinite(z);
  const double alpha = RateScale(static_cast<Index>(z.rows()),
                                 static_cast<Index>(z.cols()), cfg);
  Matrix gram;
  switch (form) {
    case GramForm::kSmaller:
      gram = linalg::SmallGram(z);
      break;
    case GramForm::kOuter:
      gram = linalg::OuterGram(z);
      break;
    case GramForm::kInner:
      gram = linalg::InnerGram(z);
      break;
  }
  return 0.5 * linalg::LogDetIdentityPlus(gram, alpha) / std::numbers::ln2;
}

double CodingRate(const FeatureMatrix& z, const RateConfig& cfg, GramForm form) {
  return CodingRate(z.data(), cfg, form);
}

double HadamardUpperBound(const Matrix& z, const RateConfig& cfg) {
  cfg.Validate();
  RequireNonEmpty(z);
  RequireFinite(z);
  const double d = static_cast<double>(z.rows());
  const double n = static_cast<double>(z.cols());
  const Vector row_energy = z.rowwise().squaredNorm();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < row_energy.size(); ++i) {
    acc += std::log2(d / cfg.eps2 * row_energy[i] / n + 1.0);
  }
  return acc;
}

double HadamardUpperBound(const FeatureMatrix& z, const RateConfig& cfg) {
  return HadamardUpperBound(z.data(), cfg);
}

double ClassConditionalRate(const FeatureMatrix& z, int class_index,
                            const RateConfig& cfg) {
  RequireLabels(z);
  if (class_index < 0 || class_index >= z.num_classes()) {
    Fail(ErrorKind::kInvalidArgument,
         "class index " + std::to_string(class_index) + " out of range");
  }
  const IndexList members = z.ClassMembers(class_index);
  if (members.empty()) {
    Fail(ErrorKind::kEmptyClass, "class " + std::to_string(class_index) +
                                     " has no samples");
  }
  return CodingRate(z.Select(members).data(), cfg);
}

double SemanticDiversityRaw(const FeatureMatrix& z, const RateConfig& cfg) {
  RequireLabels(z);
  RequireNonEmpty(z.data());
  const double n = static_cast<double>(z.size());
  double value = CodingRate(z.data(), cfg);
  const std::vector<Index> counts = z.ClassCounts();
  for (int c = 0; c < z.num_classes(); ++c) {
    const Index count = counts[static_cast<Index>(c)];
    if (count == 0) continue;  // absent classes carry zero weight
    if (count == z.size()) return 0.0;
    value -= static_cast<double>(count) / n * ClassConditionalRate(z, c, cfg);
  }
  return value;
}

double SemanticDiversity(const FeatureMatrix& z, const RateConfig& cfg) {
  const double raw = SemanticDiversityRaw(z, cfg);
  if (raw >= 0.0) return raw;
  if (raw >= -kSdivClampTolerance) {
    // Below 1e-12 this is ordinary rounding; not worth a log line.
    if (raw < -1e-12) {
      std::clog << "rddpp: clamping semantic diversity " << raw << " to 0\n";
    }
    return 0.0;
  }
  Fail(ErrorKind::kNumerical,
       "semantic diversity " + std::to_string(raw) + " below tolerance");
}

}  // namespace rddpp
