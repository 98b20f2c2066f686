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

#include "rddpp/model_hook.hpp"

#include <algorithm>
#include <string>

#include "rddpp/error.hpp"

namespace rddpp {

IndexList ExpandItems(const ItemMembers& members, std::span<const Index> items) {
  if (members.empty()) return IndexList(items.begin(), items.end());
  IndexList out;
  for (Index item : items) {
    if (item >= members.size()) {
      Fail(ErrorKind::kInvalidArgument, "item " + std::to_string(item) + " out of range");
    }
    out.insert(out.end(), members[item].begin(), members[item].end());
  }
  return out;
}

ModelHook MakeRetrainingHook(const FeatureMatrix& samples, ItemMembers members,
                             eval::LogRegConfig config) {
  if (!samples.has_labels()) {
    Fail(ErrorKind::kInvalidInput, "the model hook needs labelled samples");
  }
  for (const IndexList& m : members) {
    for (Index s : m) {
      if (s >= samples.size()) {
        Fail(ErrorKind::kInvalidArgument,
             "item member " + std::to_string(s) + " out of range of the sample matrix");
      }
    }
  }
  return [&samples, members = std::move(members), config](
             std::span<const Index> selected,
             std::span<const Index> candidates) -> std::optional<std::vector<Matrix>> {
    const FeatureMatrix train = samples.Select(ExpandItems(members, selected));
    const auto counts = train.ClassCounts();
    if (std::count_if(counts.begin(), counts.end(), [](Index c) { return c > 0; }) < 2) {
      return std::nullopt;
    }
    const eval::Classifier model = eval::Classifier::Fit(train, config);
    std::vector<Matrix> out;
    out.reserve(candidates.size());
    for (Index item : candidates) {
      const Index one[] = {item};
      const IndexList cols = ExpandItems(members, one);
      out.push_back(model.PredictProba(samples.Select(cols).data()));
    }
    return out;
  };
}

}  // namespace rddpp
