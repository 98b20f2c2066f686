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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace rddpp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = std::size_t;
using IndexList = std::vector<Index>;

// d x n matrix of sample features, one sample per column, with optional
// integer class labels in [0, num_classes).
class FeatureMatrix {
 public:
  FeatureMatrix() = default;

  // Throws kInvalidInput on non-finite entries or bad labels. When labels are
  // given and num_classes is 0, the class count is max(label) + 1.
  explicit FeatureMatrix(Matrix data);
  FeatureMatrix(Matrix data, std::vector<int> labels, int num_classes = 0);

  // Empty matrix with a fixed feature dimension (d x 0).
  static FeatureMatrix Empty(Index dim, bool labeled, int num_classes = 0);

  Index dim() const { return static_cast<Index>(data_.rows()); }
  Index size() const { return static_cast<Index>(data_.cols()); }
  bool empty() const { return data_.cols() == 0; }

  const Matrix& data() const { return data_; }
  auto column(Index j) const { return data_.col(static_cast<Eigen::Index>(j)); }

  bool has_labels() const { return labels_.has_value(); }
  // Precondition: has_labels().
  const std::vector<int>& labels() const { return *labels_; }
  int label(Index j) const { return (*labels_)[j]; }
  int num_classes() const { return num_classes_; }

  // Column indices of samples in class c, ascending.
  IndexList ClassMembers(int c) const;
  std::vector<Index> ClassCounts() const;

  // Columns in the given order; labels follow.
  FeatureMatrix Select(std::span<const Index> columns) const;

  // [this, other]; labels must be both present or both absent.
  FeatureMatrix Append(const FeatureMatrix& other) const;
  // [this, x] with optional label (required iff has_labels()).
  FeatureMatrix AppendColumn(const Eigen::Ref<const Vector>& x,
                             std::optional<int> label) const;

  // Same data, labels dropped.
  FeatureMatrix Unlabeled() const { return FeatureMatrix(data_); }

 private:
  void Validate() const;

  Matrix data_;
  std::optional<std::vector<int>> labels_;
  int num_classes_ = 0;
};

}  // namespace rddpp
