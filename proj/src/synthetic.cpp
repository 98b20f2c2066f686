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

#include <cmath>
#include <random>
#include <string>

#include "rddpp/data.hpp"
#include "rddpp/error.hpp"

namespace rddpp::data {

const char* ToString(Distribution dist) {
  switch (dist) {
    case Distribution::kGaussian:
      return "gaussian";
    case Distribution::kUniform01:
      return "uniform";
    case Distribution::kBeta:
      return "beta";
    case Distribution::kBinomial:
      return "binomial";
    case Distribution::kExponential:
      return "exponential";
    case Distribution::kRayleigh:
      return "rayleigh";
    case Distribution::kPoisson:
      return "poisson";
  }
  return "unknown";
}

Distribution ParseDistribution(const std::string& text) {
  for (Distribution d :
       {Distribution::kGaussian, Distribution::kUniform01, Distribution::kBeta,
        Distribution::kBinomial, Distribution::kExponential, Distribution::kRayleigh,
        Distribution::kPoisson}) {
    if (text == ToString(d)) return d;
  }
  Fail(ErrorKind::kInvalidArgument, "unknown distribution '" + text + "'");
}

void SyntheticSpec::Validate() const {
  if (n == 0 || d == 0) Fail(ErrorKind::kInvalidArgument, "n and d must be >= 1");
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      Fail(ErrorKind::kInvalidArgument, std::string(what) + " must be positive");
    }
  };
  switch (distribution) {
    case Distribution::kBeta:
      positive(beta_a, "beta a");
      positive(beta_b, "beta b");
      break;
    case Distribution::kBinomial:
      if (binomial_trials < 0) Fail(ErrorKind::kInvalidArgument, "binomial n must be >= 0");
      if (!(binomial_p >= 0.0 && binomial_p <= 1.0)) {
        Fail(ErrorKind::kInvalidArgument, "binomial p must be in [0, 1]");
      }
      break;
    case Distribution::kExponential:
      positive(exponential_lambda, "exponential lambda");
      break;
    case Distribution::kRayleigh:
      positive(rayleigh_sigma, "rayleigh sigma");
      break;
    case Distribution::kPoisson:
      positive(poisson_lambda, "poisson lambda");
      break;
    default:
      break;
  }
}

FeatureMatrix GenerateSynthetic(const SyntheticSpec& spec) {
  spec.Validate();
  std::mt19937_64 rng(spec.seed);
  const auto rows = static_cast<Eigen::Index>(spec.d);
  const auto cols = static_cast<Eigen::Index>(spec.n);
  Matrix z(rows, cols);
  auto fill = [&](auto&& draw) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      for (Eigen::Index i = 0; i < rows; ++i) z(i, j) = draw();
    }
  };
  switch (spec.distribution) {
    case Distribution::kGaussian: {
      std::normal_distribution<double> g(0.0, 1.0);
      fill([&] { return g(rng); });
      break;
    }
    case Distribution::kUniform01: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      fill([&] { return u(rng); });
      break;
    }
    case Distribution::kBeta: {
      std::gamma_distribution<double> ga(spec.beta_a, 1.0);
      std::gamma_distribution<double> gb(spec.beta_b, 1.0);
      fill([&] {
        const double x = ga(rng);
        const double y = gb(rng);
        return x / (x + y);
      });
      break;
    }
    case Distribution::kBinomial: {
      std::binomial_distribution<int> b(spec.binomial_trials, spec.binomial_p);
      fill([&] { return static_cast<double>(b(rng)); });
      break;
    }
    case Distribution::kExponential: {
      std::exponential_distribution<double> e(spec.exponential_lambda);
      fill([&] { return e(rng); });
      break;
    }
    case Distribution::kRayleigh: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      fill([&] { return spec.rayleigh_sigma * std::sqrt(-2.0 * std::log1p(-u(rng))); });
      break;
    }
    case Distribution::kPoisson: {
      std::poisson_distribution<int> p(spec.poisson_lambda);
      fill([&] { return static_cast<double>(p(rng)); });
      break;
    }
  }
  return FeatureMatrix(std::move(z));
}

Moments AnalyticMoments(const SyntheticSpec& spec) {
  switch (spec.distribution) {
    case Distribution::kGaussian:
      return {0.0, 1.0};
    case Distribution::kUniform01:
      return {0.5, 1.0 / 12.0};
    case Distribution::kBeta: {
      const double a = spec.beta_a;
      const double b = spec.beta_b;
      return {a / (a + b), a * b / ((a + b) * (a + b) * (a + b + 1.0))};
    }
    case Distribution::kBinomial: {
      const double n = spec.binomial_trials;
      const double p = spec.binomial_p;
      return {n * p, n * p * (1.0 - p)};
    }
    case Distribution::kExponential: {
      const double l = spec.exponential_lambda;
      return {1.0 / l, 1.0 / (l * l)};
    }
    case Distribution::kRayleigh: {
      const double s = spec.rayleigh_sigma;
      return {s * std::sqrt(M_PI / 2.0), (4.0 - M_PI) / 2.0 * s * s};
    }
    case Distribution::kPoisson:
      return {spec.poisson_lambda, spec.poisson_lambda};
  }
  return {};
}

FeatureMatrix GenerateGaussianMixture(Index n, Index d, int classes, double separation,
                                      std::uint64_t seed) {
  if (n == 0 || d == 0 || classes < 1) {
    Fail(ErrorKind::kInvalidArgument, "mixture needs n, d >= 1 and classes >= 1");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix means(static_cast<Eigen::Index>(d), classes);
  for (int c = 0; c < classes; ++c) {
    for (Index i = 0; i < d; ++i) means(static_cast<Eigen::Index>(i), c) = g(rng);
    means.col(c) *= separation / means.col(c).norm();
  }
  Matrix z(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(n));
  std::vector<int> labels(n);
  for (Index j = 0; j < n; ++j) {
    const int c = static_cast<int>(j % static_cast<Index>(classes));
    labels[j] = c;
    for (Index i = 0; i < d; ++i) {
      z(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          means(static_cast<Eigen::Index>(i), c) + g(rng);
    }
  }
  return FeatureMatrix(std::move(z), std::move(labels), classes);
}

}  // namespace rddpp::data
