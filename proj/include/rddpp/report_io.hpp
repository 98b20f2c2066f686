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
// JSON documents for selection reports and metric reports. Both carry a
// schema_version; non-finite numbers are written as null.

#include <cstdint>
#include <string>
#include <vector>

#include "rddpp/eval.hpp"
#include "rddpp/scheduler.hpp"

namespace rddpp::io {

inline constexpr int kSchemaVersion = 1;

enum class PoolType { kSamples, kPackets };
const char* ToString(PoolType type);

struct SelectionFile {
  PoolType pool_type = PoolType::kSamples;
  Index pool_size = 0;
  std::vector<SelectionReport> replicates;
};

std::string FormatSelectionFile(const SelectionFile& file);
SelectionFile ParseSelectionFile(const std::string& text,
                                 const std::string& origin = "selection");

struct MetricEntry {
  std::string source;       // selection file the replicate came from
  Index replicate = 0;      // index within that file
  std::uint64_t seed = 0;   // selection seed
  Index train_items = 0;    // selected pool items
  Index train_samples = 0;  // samples trained on (packets expand to members)
  bool prior_only = false;  // single-class training set: class-prior predictor
  eval::MetricReport metrics;
};

// Metric document: every entry plus mean and sample standard deviation of
// accuracy, macro F1 and macro one-vs-rest AUROC across entries.
std::string FormatMetricFile(const std::vector<MetricEntry>& entries);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single value
};
MeanStd Summarize(const std::vector<double>& values);

}  // namespace rddpp::io
