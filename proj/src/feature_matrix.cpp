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

#include "rddpp/feature_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rddpp/error.hpp"

namespace rddpp {

FeatureMatrix::FeatureMatrix(Matrix data) : data_(std::move(data)) {
  Validate();
}

FeatureMatrix::FeatureMatrix(Matrix data, std::vector<int> labels,
                             int num_classes)
    : data_(std::move(data)), labels_(std::move(labels)), num_classes_(num_classes) {
  if (num_classes_ == 0 && !labels_->empty()) {
    num_classes_ = *std::max_element(labels_->begin(), labels_->end()) + 1;
  }
  Validate();
}

FeatureMatrix FeatureMatrix::Empty(Index dim, bool labeled, int num_classes) {
  if (labeled) {
    return FeatureMatrix(Matrix(static_cast<Eigen::Index>(dim), 0), {}, num_classes);
  }
  return FeatureMatrix(Matrix(static_cast<Eigen::Index>(dim), 0));
}

void FeatureMatrix::Validate() const {
  if (!data_.allFinite()) {
    for (Eigen::Index j = 0; j < data_.cols(); ++j) {
      for (Eigen::Index i = 0; i < data_.rows(); ++i) {
        if (!std::isfinite(data_(i, j))) {
          Fail(ErrorKind::kInvalidInput, "non-finite entry at feature " +
                                             std::to_string(i) + ", sample " +
                                             std::to_string(j));
        }
      }
    }
  }
  if (!labels_) return;
  if (labels_->size() != size()) {
    Fail(ErrorKind::kInvalidInput,
         "label count " + std::to_string(labels_->size()) +
             " does not match sample count " + std::to_string(size()));
  }
  if (num_classes_ < 0) Fail(ErrorKind::kInvalidInput, "negative class count");
  for (Index j = 0; j < labels_->size(); ++j) {
    const int c = (*labels_)[j];
    if (c < 0 || c >= num_classes_) {
      Fail(ErrorKind::kInvalidInput, "label " + std::to_string(c) + " of sample " +
                                         std::to_string(j) + " outside [0, " +
                                         std::to_string(num_classes_) + ")");
    }
  }
}

IndexList FeatureMatrix::ClassMembers(int c) const {
  IndexList members;
  if (!labels_) return members;
  for (Index j = 0; j < labels_->size(); ++j) {
    if ((*labels_)[j] == c) members.push_back(j);
  }
  return members;
}

std::vector<Index> FeatureMatrix::ClassCounts() const {
  std::vector<Index> counts(static_cast<Index>(std::max(num_classes_, 0)), 0);
  if (!labels_) return counts;
  for (int c : *labels_) ++counts[static_cast<Index>(c)];
  return counts;
}

FeatureMatrix FeatureMatrix::Select(std::span<const Index> columns) const {
  Matrix out(data_.rows(), static_cast<Eigen::Index>(columns.size()));
  for (Index j = 0; j < columns.size(); ++j) {
    if (columns[j] >= size()) {
      Fail(ErrorKind::kInvalidArgument,
           "column index " + std::to_string(columns[j]) + " out of range");
    }
    out.col(static_cast<Eigen::Index>(j)) = column(columns[j]);
  }
  if (!labels_) return FeatureMatrix(std::move(out));
  std::vector<int> labels;
  labels.reserve(columns.size());
  for (Index c : columns) labels.push_back((*labels_)[c]);
  return FeatureMatrix(std::move(out), std::move(labels), num_classes_);
}

FeatureMatrix FeatureMatrix::Append(const FeatureMatrix& other) const {
  if (other.dim() != dim()) {
    Fail(ErrorKind::kInvalidInput, "dimension mismatch: " + std::to_string(dim()) +
                                       " vs " + std::to_string(other.dim()));
  }
  if (other.has_labels() != has_labels()) {
    Fail(ErrorKind::kInvalidInput, "cannot append labeled and unlabeled matrices");
  }
  Matrix out(data_.rows(), data_.cols() + other.data_.cols());
  out << data_, other.data_;
  if (!labels_) return FeatureMatrix(std::move(out));
  std::vector<int> labels = *labels_;
  labels.insert(labels.end(), other.labels().begin(), other.labels().end());
  return FeatureMatrix(std::move(out), std::move(labels),
                       std::max(num_classes_, other.num_classes_));
}

FeatureMatrix FeatureMatrix::AppendColumn(const Eigen::Ref<const Vector>& x,
                                          std::optional<int> label) const {
  if (static_cast<Index>(x.size()) != dim()) {
    Fail(ErrorKind::kInvalidInput, "dimension mismatch: candidate has " +
                                       std::to_string(x.size()) + " features, expected " +
                                       std::to_string(dim()));
  }
  if (has_labels() && !label) {
    Fail(ErrorKind::kInvalidInput, "candidate label required for a labeled matrix");
  }
  Matrix out(data_.rows(), data_.cols() + 1);
  out.leftCols(data_.cols()) = data_;
  out.col(data_.cols()) = x;
  if (!labels_) return FeatureMatrix(std::move(out));
  std::vector<int> labels = *labels_;
  labels.push_back(*label);
  return FeatureMatrix(std::move(out), std::move(labels),
                       std::max(num_classes_, *label + 1));
}

}  // namespace rddpp
