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
// Desk-scale evaluation: multinomial logistic regression on z-scored
// features, and classification metrics.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rddpp/feature_matrix.hpp"

namespace rddpp::eval {

// ---- logistic regression ----------------------------------------------------

struct LogRegConfig {
  double step = 0.1;   // initial step; halved whenever a step raises the loss
  double l2 = 1e-4;    // penalty (l2 / 2) * ||W||_F^2, bias unpenalized
  Index max_iter = 2000;
  double tol = 1e-7;   // stop once the gradient norm falls below this
  std::uint64_t seed = 0;

  void Validate() const;
};

struct LinearModel {
  Matrix weights;  // classes x d
  Vector bias;     // classes
  Index iterations = 0;
  double final_loss = 0.0;
  double l2 = 0.0;
  std::uint64_t seed = 0;
  bool converged = false;

  int num_classes() const { return static_cast<int>(weights.rows()); }
  Index dim() const { return static_cast<Index>(weights.cols()); }
};

struct LossGradient {
  double loss = 0.0;
  Matrix grad_weights;
  Vector grad_bias;
};

// Mean cross-entropy of softmax(W x + b) plus (l2 / 2) ||W||^2, and its
// gradient. x is d x n with labels in [0, num_classes).
LossGradient LossAndGradient(const Matrix& weights, const Vector& bias, const Matrix& x,
                             std::span<const int> labels, int num_classes, double l2);

// Full-batch gradient descent from zero. The class count is the training
// matrix's num_classes(); throws kDegenerateModel when fewer than two classes
// occur among the training labels.
LinearModel TrainLogReg(const FeatureMatrix& train, const LogRegConfig& config = {});

// classes x n matrix of softmax probabilities (columns sum to one).
Matrix PredictProba(const LinearModel& model, const Matrix& x);
std::vector<int> Predict(const LinearModel& model, const Matrix& x);

// Z-score normalization fitted on one matrix; zero spreads are replaced by 1.
class Standardizer {
 public:
  Standardizer() = default;
  explicit Standardizer(const Matrix& x);
  Matrix Apply(const Matrix& x) const;
  const Vector& mean() const { return mean_; }
  const Vector& scale() const { return scale_; }

 private:
  Vector mean_;
  Vector scale_;
};

// Standardizer fitted on the training data followed by logistic regression.
class Classifier {
 public:
  // Throws kDegenerateModel when fewer than two classes are present.
  static Classifier Fit(const FeatureMatrix& train, const LogRegConfig& config = {});
  // As Fit, but a training set with a single class yields a prior-only
  // classifier that predicts the empirical class frequencies for every input.
  static Classifier FitOrPrior(const FeatureMatrix& train, const LogRegConfig& config = {});
  Matrix PredictProba(const Matrix& x) const;
  std::vector<int> Predict(const Matrix& x) const;
  bool prior_only() const { return prior_only_; }
  const LinearModel& model() const { return model_; }
  const Standardizer& standardizer() const { return standardizer_; }

 private:
  Standardizer standardizer_;
  LinearModel model_;
  bool prior_only_ = false;
  Vector prior_;
};

// ---- metrics ----------------------------------------------------------------

// Mann-Whitney AUROC of `scores` for the positive items, midranks for ties.
// nullopt when either side is empty.
std::optional<double> BinaryAuroc(std::span<const double> scores,
                                  std::span<const char> positive);

struct ClassMetrics {
  int label = 0;
  Index support = 0;          // true occurrences
  std::optional<double> auroc;  // nullopt: no positives or no negatives
  double f1 = 0.0;
  bool f1_undefined = false;  // no true or predicted occurrences
};

struct MetricReport {
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  double auroc_macro_ovr = 0.0;
  std::vector<ClassMetrics> per_class;
  std::vector<int> auroc_excluded;   // classes without both positives and negatives
  std::vector<int> f1_undefined;     // classes scored 0 in the F1 average
};

// One-vs-rest AUROC per class of probs (classes x n), macro-averaged over the
// classes that occur in labels. Throws unless at least two classes occur.
double AurocMacroOvr(std::span<const int> labels, const Matrix& probs,
                     std::vector<ClassMetrics>* per_class = nullptr,
                     std::vector<int>* excluded = nullptr);

// Accuracy and macro F1 over the union of true and predicted classes, with
// F1 = 2TP / (2TP + FP + FN).
struct AccuracyF1 {
  double accuracy = 0.0;
  double macro_f1 = 0.0;
  std::vector<int> classes;
  std::vector<double> f1;
  std::vector<int> undefined;
};
AccuracyF1 AccuracyAndF1(std::span<const int> labels, std::span<const int> predictions);

// All metrics for a probability matrix (predictions are per-column argmax).
MetricReport Evaluate(std::span<const int> labels, const Matrix& probs);

}  // namespace rddpp::eval
