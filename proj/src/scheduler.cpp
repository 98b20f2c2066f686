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

#include "rddpp/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "rddpp/error.hpp"

namespace rddpp {
namespace {

bool NeedsLabels(const SchedulerConfig& cfg) {
  switch (cfg.strategy) {
    case Strategy::kRdDppBimodal:
    case Strategy::kRdDppDiversityOnly:
    case Strategy::kMarginalRateGain:
      return cfg.quality_mode == QualityMode::kSemanticDiversity;
    default:
      return false;
  }
}

bool NeedsHookUpfront(const SchedulerConfig& cfg) {
  return cfg.strategy == Strategy::kEntropy || cfg.strategy == Strategy::kMinMargin;
}

class SelectionRun {
 public:
  SelectionRun(const FeatureMatrix& pool, const IndexList& initial,
               const SchedulerConfig& cfg, const ModelHook* hook)
      : pool_(pool), cfg_(cfg), hook_(hook), rng_(cfg.seed) {
    cfg_.Validate();
    if (pool_.empty()) Fail(ErrorKind::kInvalidArgument, "empty selection pool");
    if (NeedsLabels(cfg_) && !pool_.has_labels()) {
      Fail(ErrorKind::kConfiguration, std::string("strategy ") + ToString(cfg_.strategy) +
                                          " with semantic quality needs labels");
    }
    if (NeedsHookUpfront(cfg_) && hook_ == nullptr) {
      Fail(ErrorKind::kConfiguration, std::string("strategy ") + ToString(cfg_.strategy) +
                                          " needs a prediction model");
    }
    std::vector<char> seen(pool_.size(), 0);
    for (Index i : initial) {
      if (i >= pool_.size()) {
        Fail(ErrorKind::kInvalidArgument, "initial index " + std::to_string(i) +
                                              " out of range");
      }
      if (seen[i]) Fail(ErrorKind::kInvalidArgument, "duplicate initial index");
      seen[i] = 1;
    }
    if (cfg_.budget < initial.size()) {
      Fail(ErrorKind::kInvalidArgument, "budget smaller than the initial set");
    }
    state_.selected = initial;
    for (Index i = 0; i < pool_.size(); ++i) {
      if (!seen[i]) state_.remaining.push_back(i);
    }
    track_ = pool_.has_labels() || cfg_.quality_mode == QualityMode::kRateGain;
    selected_matrix_ = pool_.Select(initial);
    report_.initial = initial;
    report_.config = cfg_;
    report_.seed = cfg_.seed;
    report_.statistic =
        cfg_.quality_mode == QualityMode::kSemanticDiversity ? "sdiv" : "coding-rate";
  }

  SelectionReport Run() {
    if (track_ && !state_.selected.empty()) state_.history.push_back(Statistic());
    const Index target = std::min(cfg_.budget, pool_.size());
    Index round = 0;
    while (state_.selected.size() < target) {
      const Index size = std::min(cfg_.k, target - state_.selected.size());
      RoundRecord record;
      record.round_index = round;
      record.sdiv_before = CurrentStatistic();
      RunRound(size, record);
      Commit(record.chosen);
      record.sdiv_after = CurrentStatistic();
      if (record.mode == Mode::kUncertainty && !report_.transition_round) {
        report_.transition_round = round;
      }
      report_.rounds.push_back(std::move(record));
      ++round;
    }
    report_.selected = state_.selected;
    return std::move(report_);
  }

 private:
  double Statistic() const {
    return DiversityStatistic(selected_matrix_, cfg_.quality_mode, cfg_.rate);
  }

  double CurrentStatistic() const {
    if (!track_) return std::numeric_limits<double>::quiet_NaN();
    return state_.history.empty() ? 0.0 : state_.history.back();
  }

  void Commit(const IndexList& chosen) {
    for (Index c : chosen) {
      auto it = std::lower_bound(state_.remaining.begin(), state_.remaining.end(), c);
      if (it == state_.remaining.end() || *it != c) {
        Fail(ErrorKind::kNumerical, "selector returned an unavailable index");
      }
      state_.remaining.erase(it);
      state_.selected.push_back(c);
    }
    selected_matrix_ = selected_matrix_.Append(pool_.Select(chosen));
    if (track_) state_.history.push_back(Statistic());
  }

  FeatureMatrix QualityBasis() { return BootstrapSubsample(selected_matrix_, cfg_.bootstrap_cap, rng_); }

  IndexList Uncertain(std::span<const Index> candidates, Index count, UncertaintyMode mode,
                      bool require_hook, RoundRecord& record) {
    if (hook_ == nullptr) {
      if (require_hook) {
        Fail(ErrorKind::kConfiguration, "uncertainty round reached without a prediction model");
      }
      record.fill = RoundFill::kRandom;
      return SelectRandom(candidates, count, rng_);
    }
    const auto probs = (*hook_)(state_.selected, candidates);
    if (!probs) {
      record.fill = RoundFill::kRandom;
      return SelectRandom(candidates, count, rng_);
    }
    return SelectRoundUncertainty(candidates, *probs, count, mode);
  }

  // Shortfall after rank exhaustion: uncertainty if a model exists, else random.
  void TopUp(Index size, RoundRecord& record) {
    if (record.chosen.size() >= size) return;
    const IndexList taken = Sorted(record.chosen);
    IndexList rest;
    std::set_difference(state_.remaining.begin(), state_.remaining.end(), taken.begin(),
                        taken.end(), std::back_inserter(rest));
    RoundRecord scratch;
    const IndexList extra = Uncertain(rest, size - record.chosen.size(),
                                      cfg_.uncertainty_mode, /*require_hook=*/false, scratch);
    record.fill = scratch.fill == RoundFill::kRandom ? RoundFill::kRandom
                                                     : RoundFill::kUncertainty;
    record.chosen.insert(record.chosen.end(), extra.begin(), extra.end());
  }

  static IndexList Sorted(IndexList v) {
    std::sort(v.begin(), v.end());
    return v;
  }

  void DiversityRound(Index size, RoundRecord& record) {
    const RoundChoice choice = SelectRoundDiversity(QualityBasis(), pool_, state_.remaining,
                                                    size, cfg_.quality_mode, cfg_.rate);
    record.chosen = choice.chosen;
    record.rank_exhausted = choice.rank_exhausted;
    if (choice.chosen.size() < size) {
      TopUp(size, record);
      if (cfg_.strategy == Strategy::kRdDppBimodal) state_.transition_flag = true;
    }
  }

  void RunRound(Index size, RoundRecord& record) {
    switch (cfg_.strategy) {
      case Strategy::kRdDppBimodal: {
        if (!state_.transition_flag && state_.history.size() >= 2) {
          const double gain = state_.history.back() - state_.history[state_.history.size() - 2];
          if (!(gain > cfg_.phi0)) state_.transition_flag = true;
        }
        state_.mode = state_.transition_flag ? Mode::kUncertainty : Mode::kDiversity;
        record.mode = state_.mode;
        if (state_.mode == Mode::kDiversity) {
          DiversityRound(size, record);
        } else {
          record.chosen = Uncertain(state_.remaining, size, cfg_.uncertainty_mode,
                                    /*require_hook=*/true, record);
        }
        return;
      }
      case Strategy::kRdDppDiversityOnly:
        record.mode = Mode::kDiversity;
        DiversityRound(size, record);
        return;
      case Strategy::kMarginalRateGain:
        record.mode = Mode::kDiversity;
        record.chosen = SelectMarginalRateGain(QualityBasis(), pool_, state_.remaining, size,
                                               cfg_.quality_mode, cfg_.rate);
        return;
      case Strategy::kEntropy:
      case Strategy::kMinMargin:
        record.mode = Mode::kUncertainty;
        record.chosen = Uncertain(state_.remaining, size,
                                  cfg_.strategy == Strategy::kEntropy
                                      ? UncertaintyMode::kEntropy
                                      : UncertaintyMode::kMinMargin,
                                  /*require_hook=*/true, record);
        return;
      case Strategy::kKCenter:
        record.mode = Mode::kDiversity;
        record.chosen = SelectKCenter(pool_, state_.remaining, state_.selected, size);
        return;
      case Strategy::kDppCoreset: {
        record.mode = Mode::kDiversity;
        const RoundChoice choice = SelectDppCoreset(pool_, state_.remaining, size);
        record.chosen = choice.chosen;
        record.rank_exhausted = choice.rank_exhausted;
        TopUp(size, record);
        return;
      }
      case Strategy::kRandom:
        record.mode = Mode::kDiversity;
        record.chosen = SelectRandom(state_.remaining, size, rng_);
        return;
    }
  }

  const FeatureMatrix& pool_;
  SchedulerConfig cfg_;
  const ModelHook* hook_;
  std::mt19937_64 rng_;
  SelectionState state_;
  FeatureMatrix selected_matrix_;
  bool track_ = false;
  SelectionReport report_;
};

}  // namespace

bool SelectionState::Consistent(Index pool_size) const {
  if (selected.size() + remaining.size() != pool_size) return false;
  std::vector<char> seen(pool_size, 0);
  for (const IndexList* list : {&selected, &remaining}) {
    for (Index i : *list) {
      if (i >= pool_size || seen[i]) return false;
      seen[i] = 1;
    }
  }
  return (mode == Mode::kUncertainty) == transition_flag;
}

const char* ToString(RoundFill fill) {
  switch (fill) {
    case RoundFill::kNone:
      return "none";
    case RoundFill::kUncertainty:
      return "uncertainty";
    case RoundFill::kRandom:
      return "random";
  }
  return "none";
}

RoundFill ParseRoundFill(const std::string& text) {
  if (text == "none") return RoundFill::kNone;
  if (text == "uncertainty") return RoundFill::kUncertainty;
  if (text == "random") return RoundFill::kRandom;
  Fail(ErrorKind::kParse, "unknown round fill '" + text + "'");
}

double DiversityStatistic(const FeatureMatrix& selected, QualityMode mode,
                          const RateConfig& rate) {
  if (selected.empty()) return 0.0;
  return mode == QualityMode::kSemanticDiversity ? SemanticDiversity(selected, rate)
                                                 : CodingRate(selected, rate);
}

SelectionReport RunSelection(const FeatureMatrix& pool, const IndexList& initial,
                             const SchedulerConfig& cfg, const ModelHook* hook) {
  return SelectionRun(pool, initial, cfg, hook).Run();
}

IndexList DrawInitial(Index pool_size, Index count, std::uint64_t seed) {
  IndexList all(pool_size);
  for (Index i = 0; i < pool_size; ++i) all[i] = i;
  // Offset keeps the initial draw independent of the run's own stream.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  return SelectRandom(all, count, rng);
}

}  // namespace rddpp
