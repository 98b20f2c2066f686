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

// Round-based selection driver. For the bi-modal strategy, each round first
// compares the diversity statistic of the two most recent epochs; while the
// gain exceeds phi0 the round is a quality-diversity DPP round, and the first
// time it does not, the scheduler switches permanently to uncertainty rounds.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rddpp/selection.hpp"

namespace rddpp {

// Given the selected and the candidate pool indices, returns one
// (classes x samples) matrix of predicted distributions per candidate, or
// nullopt when no model can be trained yet (e.g. a single class selected).
using ModelHook = std::function<std::optional<std::vector<Matrix>>(
    std::span<const Index> selected, std::span<const Index> candidates)>;

struct SelectionState {
  IndexList selected;   // in selection order
  IndexList remaining;  // ascending
  Mode mode = Mode::kDiversity;
  bool transition_flag = false;
  std::vector<double> history;  // diversity statistic per completed epoch

  // selected and remaining partition {0..pool_size-1}; mode matches the flag.
  bool Consistent(Index pool_size) const;
};

enum class RoundFill { kNone, kUncertainty, kRandom };
const char* ToString(RoundFill fill);
RoundFill ParseRoundFill(const std::string& text);

struct RoundRecord {
  Index round_index = 0;
  Mode mode = Mode::kDiversity;
  IndexList chosen;
  double sdiv_before = 0.0;  // statistic of the accumulated set before/after
  double sdiv_after = 0.0;
  bool rank_exhausted = false;
  // How the round (or its rank-exhaustion shortfall) was filled when the
  // primary rule could not provide every item.
  RoundFill fill = RoundFill::kNone;
};

struct SelectionReport {
  IndexList initial;
  IndexList selected;  // initial followed by every round's choices
  std::vector<RoundRecord> rounds;
  std::optional<Index> transition_round;  // first uncertainty round
  SchedulerConfig config;
  std::uint64_t seed = 0;
  // "sdiv" (semantic mode) or "coding-rate" (rate-gain mode); null-valued
  // when the pool has no labels and the statistic needs them.
  std::string statistic;
};

// Statistic tracked between rounds: sdiv in semantic mode, R in rate-gain
// mode; 0 for an empty set.
double DiversityStatistic(const FeatureMatrix& selected, QualityMode mode,
                          const RateConfig& rate);

// Runs cfg.strategy on `pool` (one column per selectable item) starting from
// `initial` until cfg.budget items (initial included) or the pool runs out.
// `hook` is required by uncertainty-based rounds; nullptr otherwise allowed.
SelectionReport RunSelection(const FeatureMatrix& pool, const IndexList& initial,
                             const SchedulerConfig& cfg, const ModelHook* hook);

// Draws `count` distinct initial items with the given seed.
IndexList DrawInitial(Index pool_size, Index count, std::uint64_t seed);

}  // namespace rddpp
