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

#include <cstdint>
#include <string>
#include <vector>

#include "rddpp/feature_matrix.hpp"
#include "rddpp/ratedist.hpp"

namespace rddpp::data {

// ---- k-means --------------------------------------------------------------

struct KMeansResult {
  std::vector<int> assignment;  // cluster per sample
  Matrix centroids;             // d x n_clusters
  Index iterations = 0;
  bool converged = false;
  // All samples identical: everything lands in cluster 0.
  bool degenerate = false;
  Index effective_clusters = 0;
};

// Lloyd iterations from a k-means++ seeding. Empty clusters are repaired by
// moving the point of the largest cluster farthest from its centroid.
KMeansResult KMeans(const FeatureMatrix& z, Index n_clusters, std::uint64_t seed,
                    Index max_iter = 300);

// ---- packets --------------------------------------------------------------

struct Packet {
  IndexList sample_indices;
  // Per-class mean features concatenated (length d * num_classes; absent
  // classes are zero blocks), scaled to unit norm.
  Vector feature;
  std::vector<Index> class_counts;
  int label = 0;              // most frequent class, lowest on ties
  bool zero_feature = false;  // all-zero means, left unnormalized
};

Packet MakePacket(const FeatureMatrix& z, IndexList sample_indices);

struct PacketSet {
  std::vector<Packet> packets;
  Index dim = 0;          // d of the samples
  int num_classes = 0;
  Index per_packet = 0;
  std::vector<int> skipped_clusters;  // fewer than per_packet members
};

// One packet per cluster (ascending cluster id) of per_packet members drawn
// uniformly without replacement.
PacketSet BuildPackets(const FeatureMatrix& z, const std::vector<int>& assignment,
                       Index per_packet, std::uint64_t seed);

// Packet features as columns, labelled by each packet's dominant class.
FeatureMatrix PacketPool(const PacketSet& set);

std::string FormatPackets(const PacketSet& set);
PacketSet ParsePackets(const std::string& text, const std::string& origin = "packets");

// ---- synthetic data -------------------------------------------------------

enum class Distribution {
  kGaussian,
  kUniform01,
  kBeta,
  kBinomial,
  kExponential,
  kRayleigh,
  kPoisson,
};

const char* ToString(Distribution dist);
Distribution ParseDistribution(const std::string& text);

struct SyntheticSpec {
  Distribution distribution = Distribution::kGaussian;
  Index n = 200;
  Index d = 500;
  std::uint64_t seed = 0;
  double beta_a = 1.0;
  double beta_b = 5.0;
  int binomial_trials = 10;
  double binomial_p = 0.5;
  double exponential_lambda = 1.0;
  double rayleigh_sigma = 1.0;
  double poisson_lambda = 1.0;

  void Validate() const;
};

// d x n matrix of i.i.d. entries.
FeatureMatrix GenerateSynthetic(const SyntheticSpec& spec);

// Analytic mean and variance of one entry.
struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};
Moments AnalyticMoments(const SyntheticSpec& spec);

// Labelled Gaussian mixture: class means are random directions scaled to
// `separation`, samples add N(0, I_d) noise; classes assigned round-robin.
FeatureMatrix GenerateGaussianMixture(Index n, Index d, int classes, double separation,
                                      std::uint64_t seed);

// ---- phase transition scan ------------------------------------------------

struct PhaseCurve {
  IndexList greedy_order;  // full ordering used for the greedy prefixes
  Index greedy_rank = 0;   // items placed by greedy MAP before rank exhaustion
  // Entry k-1 describes the prefix of size k.
  std::vector<double> greedy_upper_bound;
  std::vector<double> greedy_exact_rate;  // NaN where skipped by the stride
  std::vector<double> random_mean;
  std::vector<double> random_std;
  Index alpha = 0;  // smallest k attaining the greedy maximum
};

struct PhaseScanOptions {
  RateConfig rate;
  Index shuffles = 10;
  std::uint64_t seed = 0;
  // Exact rate evaluated every `exact_stride` prefixes (plus k = 1 and n).
  Index exact_stride = 1;
};

PhaseCurve PhaseScan(const Matrix& z, const PhaseScanOptions& options);

// Hadamard-bound diversity of each prefix of `order`; the k = n entry is
// computed from z in its original column order so that every ordering ends
// on the same value.
std::vector<double> PrefixUpperBounds(const Matrix& z, const IndexList& order,
                                      const RateConfig& rate);

}  // namespace rddpp::data
