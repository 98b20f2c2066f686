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
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "commands.hpp"
#include "rddpp/csv_io.hpp"
#include "rddpp/data.hpp"
#include "rddpp/error.hpp"
#include "rddpp/eval.hpp"
#include "rddpp/model_hook.hpp"
#include "rddpp/parallel.hpp"
#include "rddpp/report_io.hpp"

namespace rddpp::cli {
namespace {

struct EvalOptions {
  std::string train_features;
  std::string train_labels;
  std::string test_features;
  std::string test_labels;
  std::vector<std::string> selections;
  std::string packets;
  eval::LogRegConfig model;
  std::string out;
};

struct Job {
  std::string source;
  Index replicate = 0;
  std::uint64_t seed = 0;
  Index items = 0;
  IndexList samples;
};

void RunEval(const EvalOptions& o) {
  const FeatureMatrix train_raw = io::LoadFeatures(o.train_features, o.train_labels);
  const FeatureMatrix test = io::LoadFeatures(o.test_features, o.test_labels);
  if (train_raw.dim() != test.dim()) {
    Fail(ErrorKind::kInvalidInput, o.test_features + " has " + std::to_string(test.dim()) +
                                       " features but " + o.train_features + " has " +
                                       std::to_string(train_raw.dim()));
  }
  const int classes = std::max(train_raw.num_classes(), test.num_classes());
  const FeatureMatrix train(train_raw.data(), train_raw.labels(), classes);

  ItemMembers members;
  if (!o.packets.empty()) {
    const data::PacketSet set = data::ParsePackets(io::ReadFile(o.packets), o.packets);
    for (const data::Packet& p : set.packets) members.push_back(p.sample_indices);
  }

  std::vector<Job> jobs;
  if (o.selections.empty()) {
    Job job;
    job.source = "full-training-set";
    job.items = train.size();
    job.samples.resize(train.size());
    for (Index i = 0; i < train.size(); ++i) job.samples[i] = i;
    jobs.push_back(std::move(job));
  }
  for (const std::string& path : o.selections) {
    const io::SelectionFile file = io::ParseSelectionFile(io::ReadFile(path), path);
    const bool packets = file.pool_type == io::PoolType::kPackets;
    if (packets && members.empty()) {
      throw CLI::ValidationError("--packets", path + " selects packets; pass the packets file");
    }
    const Index pool_size = packets ? members.size() : train.size();
    if (file.pool_size != pool_size) {
      Fail(ErrorKind::kInvalidInput, path + ": selection pool has " +
                                         std::to_string(file.pool_size) + " items, expected " +
                                         std::to_string(pool_size));
    }
    for (Index r = 0; r < file.replicates.size(); ++r) {
      const SelectionReport& rep = file.replicates[r];
      for (Index i : rep.selected) {
        if (i >= pool_size) {
          Fail(ErrorKind::kInvalidInput, path + ": replicate " + std::to_string(r) +
                                             ": selection index " + std::to_string(i) +
                                             " out of range (pool size " +
                                             std::to_string(pool_size) + ")");
        }
      }
      Job job;
      job.source = path;
      job.replicate = r;
      job.seed = rep.seed;
      job.items = rep.selected.size();
      job.samples = ExpandItems(packets ? members : ItemMembers{}, rep.selected);
      for (Index s : job.samples) {
        if (s >= train.size()) {
          Fail(ErrorKind::kInvalidInput, o.packets + ": packet member " + std::to_string(s) +
                                             " out of range of " + o.train_features);
        }
      }
      jobs.push_back(std::move(job));
    }
  }

  std::vector<io::MetricEntry> entries(jobs.size());
  ParallelFor(jobs.size(), [&](std::size_t i) {
    const Job& job = jobs[i];
    const eval::Classifier model = eval::Classifier::FitOrPrior(train.Select(job.samples), o.model);
    io::MetricEntry& e = entries[i];
    e.source = job.source;
    e.replicate = job.replicate;
    e.seed = job.seed;
    e.train_items = job.items;
    e.train_samples = job.samples.size();
    e.prior_only = model.prior_only();
    e.metrics = eval::Evaluate(test.labels(), model.PredictProba(test.data()));
  });
  io::WriteFile(o.out, io::FormatMetricFile(entries));
  std::vector<double> auroc;
  for (const auto& e : entries) auroc.push_back(e.metrics.auroc_macro_ovr);
  const io::MeanStd s = io::Summarize(auroc);
  std::cout << "evaluated " << entries.size() << " replicate(s); AUROC mean "
            << io::FormatDouble(s.mean) << " std " << io::FormatDouble(s.std) << "; wrote "
            << o.out << '\n';
}

}  // namespace

void AddEval(CLI::App& app) {
  auto opts = std::make_shared<EvalOptions>();
  CLI::App* cmd = app.add_subcommand(
      "eval", "Train on selected samples and report test metrics (full set if no selection)");
  cmd->add_option("--train-features", opts->train_features, "Training feature CSV")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--train-labels", opts->train_labels, "Training label file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--test-features", opts->test_features, "Test feature CSV")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--test-labels", opts->test_labels, "Test label file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--selection", opts->selections, "Selection report (repeatable)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--packets", opts->packets, "Packets file for packet selections")
      ->check(CLI::ExistingFile);
  cmd->add_option("--step", opts->model.step, "Initial gradient step")->capture_default_str();
  cmd->add_option("--l2", opts->model.l2, "L2 penalty")->capture_default_str();
  cmd->add_option("--max-iter", opts->model.max_iter, "Gradient descent iterations")
      ->capture_default_str();
  cmd->add_option("--tol", opts->model.tol, "Gradient-norm tolerance")->capture_default_str();
  cmd->add_option("--out", opts->out, "Output metric report (JSON)")->required();
  cmd->callback([opts] { RunEval(*opts); });
}

}  // namespace rddpp::cli
