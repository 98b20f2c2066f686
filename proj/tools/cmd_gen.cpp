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

#include "commands.hpp"
#include "rddpp/csv_io.hpp"
#include "rddpp/data.hpp"

namespace rddpp::cli {
namespace {

struct GenOptions {
  std::string dist = "gaussian";
  data::SyntheticSpec spec;
  std::optional<double> lambda;
  int classes = 5;
  double separation = 3.0;
  Index test_n = 0;
  std::string out;
  std::string labels_out;
  std::string test_out;
  std::string test_labels_out;
};

IndexList Range(Index begin, Index end) {
  IndexList out;
  for (Index i = begin; i < end; ++i) out.push_back(i);
  return out;
}

void RunGen(const GenOptions& o) {
  FeatureMatrix z;
  if (o.dist == "mixture") {
    if (o.labels_out.empty()) {
      throw CLI::ValidationError("--labels-out", "required with --dist mixture");
    }
    // Train and test rows come from one mixture so they share class means.
    const FeatureMatrix all = data::GenerateGaussianMixture(
        o.spec.n + o.test_n, o.spec.d, o.classes, o.separation, o.spec.seed);
    z = all.Select(Range(0, o.spec.n));
    if (o.test_n > 0) {
      if (o.test_out.empty() || o.test_labels_out.empty()) {
        throw CLI::ValidationError("--test-n", "needs --test-out and --test-labels-out");
      }
      const FeatureMatrix test = all.Select(Range(o.spec.n, o.spec.n + o.test_n));
      io::SaveFeatures(o.test_out, test);
      io::SaveLabels(o.test_labels_out, test.labels());
    }
  } else {
    data::SyntheticSpec spec = o.spec;
    spec.distribution = data::ParseDistribution(o.dist);
    if (o.lambda) {
      spec.exponential_lambda = *o.lambda;
      spec.poisson_lambda = *o.lambda;
    }
    z = data::GenerateSynthetic(spec);
  }
  io::SaveFeatures(o.out, z);
  if (!o.labels_out.empty()) {
    if (!z.has_labels()) {
      throw CLI::ValidationError("--labels-out", "only --dist mixture produces labels");
    }
    io::SaveLabels(o.labels_out, z.labels());
  }
  std::cout << "wrote " << z.size() << " samples x " << z.dim() << " features ("
            << o.dist << ", seed " << o.spec.seed << ") to " << o.out << '\n';
}

}  // namespace

void AddGen(CLI::App& app) {
  auto opts = std::make_shared<GenOptions>();
  CLI::App* cmd = app.add_subcommand("gen", "Generate a synthetic feature matrix (CSV)");
  cmd->add_option("--dist", opts->dist,
                  "gaussian|uniform|beta|binomial|exponential|rayleigh|poisson|mixture")
      ->capture_default_str();
  cmd->add_option("--n", opts->spec.n, "Number of samples (rows)")->capture_default_str();
  cmd->add_option("--d", opts->spec.d, "Dimension (columns)")->capture_default_str();
  cmd->add_option("--seed", opts->spec.seed, "Random seed")->capture_default_str();
  cmd->add_option("--a", opts->spec.beta_a, "Beta shape a")->capture_default_str();
  cmd->add_option("--b", opts->spec.beta_b, "Beta shape b")->capture_default_str();
  cmd->add_option("--trials", opts->spec.binomial_trials, "Binomial trials")
      ->capture_default_str();
  cmd->add_option("--p", opts->spec.binomial_p, "Binomial success probability")
      ->capture_default_str();
  cmd->add_option("--lambda", opts->lambda, "Exponential rate or Poisson mean (default 1)");
  cmd->add_option("--sigma", opts->spec.rayleigh_sigma, "Rayleigh scale")
      ->capture_default_str();
  cmd->add_option("--classes", opts->classes, "Mixture: number of classes")
      ->capture_default_str();
  cmd->add_option("--separation", opts->separation, "Mixture: norm of class means")
      ->capture_default_str();
  cmd->add_option("--test-n", opts->test_n, "Mixture: extra held-out samples")
      ->capture_default_str();
  cmd->add_option("--out", opts->out, "Output feature CSV")->required();
  cmd->add_option("--labels-out", opts->labels_out, "Output label file (mixture only)");
  cmd->add_option("--test-out", opts->test_out, "Mixture: held-out feature CSV");
  cmd->add_option("--test-labels-out", opts->test_labels_out, "Mixture: held-out labels");
  cmd->callback([opts] { RunGen(*opts); });
}

}  // namespace rddpp::cli
