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

#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "commands.hpp"
#include "rddpp/csv_io.hpp"
#include "rddpp/data.hpp"
#include "rddpp/error.hpp"
#include "rddpp/model_hook.hpp"
#include "rddpp/parallel.hpp"
#include "rddpp/report_io.hpp"

namespace rddpp::cli {
namespace {

struct SelectOptions {
  std::string features;
  std::string labels;
  std::string packets;
  Index init = 1;
  std::vector<Index> init_indices;
  Index budget = 0;
  Index k = 5;
  std::string strategy = "rd-dpp";
  std::string quality_mode = "semantic-diversity";
  std::string uncertainty_mode = "entropy";
  double phi0 = 2.0;
  double eps2 = 0.5;
  std::uint64_t seed = 0;
  Index replicates = 1;
  Index bootstrap_cap = 0;
  std::string out;
};

bool NeedsLabels(const SchedulerConfig& cfg) {
  switch (cfg.strategy) {
    case Strategy::kRdDppBimodal:
    case Strategy::kEntropy:
    case Strategy::kMinMargin:
      return true;  // model-driven rounds
    case Strategy::kRdDppDiversityOnly:
      return cfg.quality_mode == QualityMode::kSemanticDiversity;
    default:
      return false;
  }
}

bool NeedsModel(Strategy s) {
  return s == Strategy::kRdDppBimodal || s == Strategy::kEntropy || s == Strategy::kMinMargin;
}

void RunSelect(const SelectOptions& o) {
  SchedulerConfig cfg;
  cfg.strategy = ParseStrategy(o.strategy);
  cfg.quality_mode = ParseQualityMode(o.quality_mode);
  cfg.uncertainty_mode = ParseUncertaintyMode(o.uncertainty_mode);
  cfg.phi0 = o.phi0;
  cfg.k = o.k;
  cfg.budget = o.budget;
  cfg.rate.eps2 = o.eps2;
  cfg.bootstrap_cap = o.bootstrap_cap;
  cfg.Validate();
  if (NeedsLabels(cfg) && o.labels.empty()) {
    throw CLI::ValidationError("--labels", std::string("required by --strategy ") +
                                               ToString(cfg.strategy) + " with --quality-mode " +
                                               ToString(cfg.quality_mode));
  }

  const std::optional<std::string> label_path =
      o.labels.empty() ? std::nullopt : std::optional<std::string>(o.labels);
  const FeatureMatrix samples = io::LoadFeatures(o.features, label_path);

  io::SelectionFile file;
  FeatureMatrix pool;
  ItemMembers members;
  if (!o.packets.empty()) {
    if (!samples.has_labels()) {
      throw CLI::ValidationError("--labels", "required with --packets");
    }
    const data::PacketSet set = data::ParsePackets(io::ReadFile(o.packets), o.packets);
    if (set.dim != samples.dim()) {
      Fail(ErrorKind::kInvalidInput, o.packets + ": packet dimension d=" +
                                         std::to_string(set.dim) + " but " + o.features +
                                         " has " + std::to_string(samples.dim()) + " features");
    }
    for (const data::Packet& p : set.packets) members.push_back(p.sample_indices);
    pool = data::PacketPool(set);
    file.pool_type = io::PoolType::kPackets;
  } else {
    pool = samples;
  }
  file.pool_size = pool.size();
  for (Index i : o.init_indices) {
    if (i >= pool.size()) {
      throw CLI::ValidationError("--init-indices", "index " + std::to_string(i) +
                                                       " out of range for a pool of " +
                                                       std::to_string(pool.size()));
    }
  }

  std::optional<ModelHook> hook;
  if (NeedsModel(cfg.strategy)) {
    eval::LogRegConfig model_cfg;
    model_cfg.seed = o.seed;
    hook = MakeRetrainingHook(samples, members, model_cfg);
  }

  file.replicates.resize(o.replicates);
  ParallelFor(o.replicates, [&](std::size_t r) {
    SchedulerConfig run_cfg = cfg;
    run_cfg.seed = o.seed + r;
    const IndexList initial = o.init_indices.empty()
                                  ? DrawInitial(pool.size(), o.init, run_cfg.seed)
                                  : IndexList(o.init_indices.begin(), o.init_indices.end());
    file.replicates[r] = RunSelection(pool, initial, run_cfg, hook ? &*hook : nullptr);
  });
  io::WriteFile(o.out, io::FormatSelectionFile(file));
  std::cout << "wrote " << file.replicates.size() << " replicate(s) of "
            << ToString(cfg.strategy) << " selection over " << pool.size() << ' '
            << io::ToString(file.pool_type) << " to " << o.out << '\n';
}

}  // namespace

void AddSelect(CLI::App& app) {
  auto opts = std::make_shared<SelectOptions>();
  CLI::App* cmd = app.add_subcommand("select", "Run a selection strategy over a pool");
  cmd->add_option("--features", opts->features, "Sample feature CSV")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--labels", opts->labels, "Sample label file")->check(CLI::ExistingFile);
  cmd->add_option("--packets", opts->packets, "Packets file; the pool becomes its packets")
      ->check(CLI::ExistingFile);
  auto* init = cmd->add_option("--init", opts->init, "Size of the random initial set")
                   ->capture_default_str();
  cmd->add_option("--init-indices", opts->init_indices, "Explicit initial pool indices")
      ->delimiter(',')
      ->excludes(init);
  cmd->add_option("--budget", opts->budget, "Total pool items to select (initial included)")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--k", opts->k, "Items per round")->capture_default_str()->check(
      CLI::PositiveNumber);
  cmd->add_option("--strategy", opts->strategy,
                  "rd-dpp|rd-dpp-diversity-only|marginal-rate-gain|entropy|min-margin|"
                  "k-center|dpp-coreset|random")
      ->capture_default_str();
  cmd->add_option("--quality-mode", opts->quality_mode, "semantic-diversity|rate-gain")
      ->capture_default_str();
  cmd->add_option("--uncertainty-mode", opts->uncertainty_mode, "entropy|min-margin")
      ->capture_default_str();
  cmd->add_option("--phi0", opts->phi0, "Diversity-gain switching threshold")
      ->capture_default_str();
  cmd->add_option("--eps2", opts->eps2, "Squared distortion")->capture_default_str();
  cmd->add_option("--seed", opts->seed, "Random seed (replicate r uses seed + r)")
      ->capture_default_str();
  cmd->add_option("--replicates", opts->replicates, "Independent runs")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--bootstrap-cap", opts->bootstrap_cap,
                  "Subsample the selected set to this size for quality scores (0 = off)")
      ->capture_default_str();
  cmd->add_option("--out", opts->out, "Output selection report (JSON)")->required();
  cmd->callback([opts] { RunSelect(*opts); });
}

}  // namespace rddpp::cli
