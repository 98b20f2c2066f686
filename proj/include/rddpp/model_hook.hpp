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
// Model hook for uncertainty rounds: retrains a z-scored logistic regression
// from scratch on the samples behind the selected items, then predicts the
// samples behind every candidate item.

#include <vector>

#include "rddpp/eval.hpp"
#include "rddpp/scheduler.hpp"

namespace rddpp {

// Sample indices behind each pool item. An empty table means the pool is the
// sample matrix itself (item i is sample i).
using ItemMembers = std::vector<IndexList>;

// Concatenated sample indices of `items`, in item order.
IndexList ExpandItems(const ItemMembers& members, std::span<const Index> items);

// The hook returns nullopt while the selected samples cover fewer than two
// classes. `samples` must be labelled and is captured by reference.
ModelHook MakeRetrainingHook(const FeatureMatrix& samples, ItemMembers members,
                             eval::LogRegConfig config = {});

}  // namespace rddpp
