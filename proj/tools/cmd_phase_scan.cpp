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
#include <sstream>
#include <string>

#include "commands.hpp"
#include "rddpp/csv_io.hpp"
#include "rddpp/data.hpp"

namespace rddpp::cli {
namespace {

struct PhaseOptions {
  std::string features;
  data::PhaseScanOptions scan;
  std::string out;
  std::string summary;
};

void RunPhaseScan(const PhaseOptions& o) {
  const FeatureMatrix z = io::LoadFeatures(o.features, std::nullopt);
  const data::PhaseCurve curve = data::PhaseScan(z.data(), o.scan);
  std::ostringstream csv;
  csv << "k,greedy_upper_bound,greedy_exact_rate,random_mean,random_std\n";
  for (Index k = 1; k <= z.size(); ++k) {
    csv << k << ',' << io::FormatDouble(curve.greedy_upper_bound[k - 1]) << ','
        << io::FormatDouble(curve.greedy_exact_rate[k - 1]) << ','
        << io::FormatDouble(curve.random_mean[k - 1]) << ','
        << io::FormatDouble(curve.random_std[k - 1]) << '\n';
  }
  io::WriteFile(o.out, csv.str());
  std::ostringstream summary;
  summary << "alpha=" << curve.alpha << ",greedy_rank=" << curve.greedy_rank
          << ",n=" << z.size() << ",d=" << z.dim()
          << ",peak=" << io::FormatDouble(curve.greedy_upper_bound[curve.alpha - 1]) << '\n';
  std::cout << summary.str();
  if (!o.summary.empty()) io::WriteFile(o.summary, summary.str());
}

}  // namespace

void AddPhaseScan(CLI::App& app) {
  auto opts = std::make_shared<PhaseOptions>();
  CLI::App* cmd = app.add_subcommand(
      "phase-scan", "Greedy-DPP vs random diversity curves and the transition point");
  cmd->add_option("--features", opts->features, "Feature CSV")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--eps2", opts->scan.rate.eps2, "Squared distortion")->capture_default_str();
  cmd->add_option("--shuffles", opts->scan.shuffles, "Random orderings averaged")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opts->scan.seed, "Random seed")->capture_default_str();
  cmd->add_option("--exact-stride", opts->scan.exact_stride,
                  "Evaluate the exact rate every this many prefixes")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", opts->out, "Output curve CSV")->required();
  cmd->add_option("--summary", opts->summary, "Also write the summary line here");
  cmd->callback([opts] { RunPhaseScan(*opts); });
}

}  // namespace rddpp::cli
