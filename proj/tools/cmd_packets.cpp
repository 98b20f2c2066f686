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
#include <string>

#include "commands.hpp"
#include "rddpp/csv_io.hpp"
#include "rddpp/data.hpp"

namespace rddpp::cli {
namespace {

struct PacketOptions {
  std::string features;
  std::string labels;
  Index n_clusters = 60;
  Index per_packet = 5;
  std::uint64_t seed = 0;
  Index max_iter = 300;
  std::string out;
};

void RunPackets(const PacketOptions& o) {
  const FeatureMatrix z = io::LoadFeatures(o.features, o.labels);
  const data::KMeansResult clusters = data::KMeans(z, o.n_clusters, o.seed, o.max_iter);
  if (clusters.degenerate) {
    std::clog << "rddpp: all samples identical; k-means produced a single cluster\n";
  }
  const data::PacketSet set = data::BuildPackets(z, clusters.assignment, o.per_packet, o.seed);
  io::WriteFile(o.out, data::FormatPackets(set));
  std::cout << "wrote " << set.packets.size() << " packets of " << set.per_packet
            << " samples (" << set.skipped_clusters.size() << " clusters skipped, k-means "
            << clusters.iterations << " iterations) to " << o.out << '\n';
}

}  // namespace

void AddPackets(CLI::App& app) {
  auto opts = std::make_shared<PacketOptions>();
  CLI::App* cmd = app.add_subcommand("packets", "Cluster samples and build packet features");
  cmd->add_option("--features", opts->features, "Sample feature CSV")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--labels", opts->labels, "Sample label file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--n-clusters", opts->n_clusters, "Number of k-means clusters")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--per-packet", opts->per_packet, "Samples per packet")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opts->seed, "Random seed")->capture_default_str();
  cmd->add_option("--max-iter", opts->max_iter, "k-means iteration cap")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", opts->out, "Output packets file")->required();
  cmd->callback([opts] { RunPackets(*opts); });
}

}  // namespace rddpp::cli
