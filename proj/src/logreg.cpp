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
#include <string>

#include "rddpp/error.hpp"
#include "rddpp/eval.hpp"

namespace rddpp::eval {
namespace {

// Column-wise softmax of a classes x n score matrix, shifted by the column max.
Matrix Softmax(Matrix scores) {
  for (Eigen::Index j = 0; j < scores.cols(); ++j) {
    auto col = scores.col(j);
    const double top = col.maxCoeff();
    col = (col.array() - top).exp();
    col /= col.sum();
  }
  return scores;
}

Matrix Scores(const Matrix& weights, const Vector& bias, const Matrix& x) {
  if (x.rows() != weights.cols()) {
    Fail(ErrorKind::kInvalidArgument, "feature dimension " + std::to_string(x.rows()) +
                                          " does not match model dimension " +
                                          std::to_string(weights.cols()));
  }
  Matrix scores = weights * x;
  scores.colwise() += bias;
  return scores;
}

}  // namespace

void LogRegConfig::Validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) {
    Fail(ErrorKind::kInvalidArgument, "step must be positive");
  }
  if (!(l2 >= 0.0) || !std::isfinite(l2)) {
    Fail(ErrorKind::kInvalidArgument, "l2 must be non-negative");
  }
  if (max_iter == 0) Fail(ErrorKind::kInvalidArgument, "max_iter must be >= 1");
  if (!(tol >= 0.0)) Fail(ErrorKind::kInvalidArgument, "tol must be non-negative");
}

LossGradient LossAndGradient(const Matrix& weights, const Vector& bias, const Matrix& x,
                             std::span<const int> labels, int num_classes, double l2) {
  const auto n = x.cols();
  if (static_cast<Eigen::Index>(labels.size()) != n) {
    Fail(ErrorKind::kInvalidArgument, "label count does not match sample count");
  }
  if (weights.rows() != num_classes || bias.size() != num_classes) {
    Fail(ErrorKind::kInvalidArgument, "parameter shapes do not match the class count");
  }
  if (n == 0) Fail(ErrorKind::kInvalidArgument, "empty training set");
  const Matrix scores = Scores(weights, bias, x);
  LossGradient out;
  Matrix residual(num_classes, n);
  double loss = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const int y = labels[static_cast<std::size_t>(j)];
    if (y < 0 || y >= num_classes) Fail(ErrorKind::kInvalidArgument, "label out of range");
    const auto col = scores.col(j);
    const double top = col.maxCoeff();
    const double lse = top + std::log((col.array() - top).exp().sum());
    loss += lse - col[y];
    residual.col(j) = (col.array() - lse).exp();
    residual(y, j) -= 1.0;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  out.loss = loss * inv_n + 0.5 * l2 * weights.squaredNorm();
  out.grad_weights = residual * x.transpose() * inv_n + l2 * weights;
  out.grad_bias = residual.rowwise().sum() * inv_n;
  return out;
}

LinearModel TrainLogReg(const FeatureMatrix& train, const LogRegConfig& config) {
  config.Validate();
  if (!train.has_labels()) Fail(ErrorKind::kInvalidInput, "training data needs labels");
  if (train.empty()) Fail(ErrorKind::kInvalidArgument, "empty training set");
  const int classes = train.num_classes();
  const auto counts = train.ClassCounts();
  if (std::count_if(counts.begin(), counts.end(), [](Index c) { return c > 0; }) < 2) {
    Fail(ErrorKind::kDegenerateModel, "training set contains fewer than two classes");
  }
  const Matrix& x = train.data();
  const std::vector<int>& y = train.labels();

  LinearModel model;
  model.weights = Matrix::Zero(classes, x.rows());
  model.bias = Vector::Zero(classes);
  model.l2 = config.l2;
  model.seed = config.seed;

  double step = config.step;
  LossGradient current = LossAndGradient(model.weights, model.bias, x, y, classes, config.l2);
  Index iter = 0;
  for (; iter < config.max_iter; ++iter) {
    const double grad_norm =
        std::sqrt(current.grad_weights.squaredNorm() + current.grad_bias.squaredNorm());
    if (grad_norm < config.tol) {
      model.converged = true;
      break;
    }
    // Halve the step until the loss does not increase.
    bool moved = false;
    while (step > 1e-12) {
      Matrix w = model.weights - step * current.grad_weights;
      Vector b = model.bias - step * current.grad_bias;
      LossGradient next = LossAndGradient(w, b, x, y, classes, config.l2);
      if (next.loss <= current.loss) {
        model.weights = std::move(w);
        model.bias = std::move(b);
        current = std::move(next);
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) {
      model.converged = true;  // no descent step is representable any more
      break;
    }
  }
  model.iterations = iter;
  model.final_loss = current.loss;
  if (!model.weights.allFinite() || !model.bias.allFinite()) {
    Fail(ErrorKind::kNumerical, "logistic regression diverged");
  }
  return model;
}

Matrix PredictProba(const LinearModel& model, const Matrix& x) {
  return Softmax(Scores(model.weights, model.bias, x));
}

std::vector<int> Predict(const LinearModel& model, const Matrix& x) {
  const Matrix probs = PredictProba(model, x);
  std::vector<int> out(static_cast<std::size_t>(probs.cols()));
  for (Eigen::Index j = 0; j < probs.cols(); ++j) {
    Eigen::Index best = 0;
    probs.col(j).maxCoeff(&best);
    out[static_cast<std::size_t>(j)] = static_cast<int>(best);
  }
  return out;
}

Standardizer::Standardizer(const Matrix& x) {
  if (x.cols() == 0) Fail(ErrorKind::kInvalidArgument, "cannot standardize an empty matrix");
  mean_ = x.rowwise().mean();
  scale_ = ((x.colwise() - mean_).array().square().rowwise().sum() /
            static_cast<double>(x.cols()))
               .sqrt()
               .matrix();
  for (Eigen::Index i = 0; i < scale_.size(); ++i) {
    if (!(scale_[i] > 0.0)) scale_[i] = 1.0;
  }
}

Matrix Standardizer::Apply(const Matrix& x) const {
  if (x.rows() != mean_.size()) {
    Fail(ErrorKind::kInvalidArgument, "standardizer dimension mismatch");
  }
  return ((x.colwise() - mean_).array().colwise() / scale_.array()).matrix();
}

Classifier Classifier::Fit(const FeatureMatrix& train, const LogRegConfig& config) {
  if (!train.has_labels()) Fail(ErrorKind::kInvalidInput, "training data needs labels");
  Classifier out;
  out.standardizer_ = Standardizer(train.data());
  const FeatureMatrix scaled(out.standardizer_.Apply(train.data()), train.labels(),
                             train.num_classes());
  out.model_ = TrainLogReg(scaled, config);
  return out;
}

Classifier Classifier::FitOrPrior(const FeatureMatrix& train, const LogRegConfig& config) {
  if (!train.has_labels()) Fail(ErrorKind::kInvalidInput, "training data needs labels");
  if (train.empty()) Fail(ErrorKind::kInvalidArgument, "empty training set");
  const auto counts = train.ClassCounts();
  if (std::count_if(counts.begin(), counts.end(), [](Index c) { return c > 0; }) >= 2) {
    return Fit(train, config);
  }
  Classifier out;
  out.standardizer_ = Standardizer(train.data());
  out.prior_only_ = true;
  out.prior_ = Vector::Zero(train.num_classes());
  for (Index c = 0; c < counts.size(); ++c) {
    out.prior_[static_cast<Eigen::Index>(c)] =
        static_cast<double>(counts[c]) / static_cast<double>(train.size());
  }
  out.model_.weights = Matrix::Zero(train.num_classes(), train.dim());
  out.model_.bias = Vector::Zero(train.num_classes());
  out.model_.l2 = config.l2;
  out.model_.seed = config.seed;
  out.model_.converged = true;
  return out;
}

Matrix Classifier::PredictProba(const Matrix& x) const {
  if (prior_only_) {
    if (x.rows() != model_.weights.cols()) {
      Fail(ErrorKind::kInvalidArgument, "feature dimension does not match the classifier");
    }
    return prior_.replicate(1, x.cols());
  }
  return eval::PredictProba(model_, standardizer_.Apply(x));
}

std::vector<int> Classifier::Predict(const Matrix& x) const {
  const Matrix probs = PredictProba(x);
  std::vector<int> out(static_cast<std::size_t>(probs.cols()));
  for (Eigen::Index j = 0; j < probs.cols(); ++j) {
    Eigen::Index best = 0;
    probs.col(j).maxCoeff(&best);
    out[static_cast<std::size_t>(j)] = static_cast<int>(best);
  }
  return out;
}

}  // namespace rddpp::eval
