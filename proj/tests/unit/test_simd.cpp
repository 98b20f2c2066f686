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
#include <vector>

#include "doctest.h"
#include "rddpp/data.hpp"
#include "rddpp/dpp.hpp"
#include "rddpp/error.hpp"
#include "rddpp/selection.hpp"
#include "rddpp/simd/kernels.hpp"
#include "support/oracles.hpp"

namespace rddpp::simd {
namespace {

std::vector<Backend> VectorBackends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::kAvx2, Backend::kNeon}) {
    if (BackendAvailable(b)) out.push_back(b);
  }
  return out;
}

// Restores the dispatch choice on scope exit.
struct BackendGuard {
  Backend saved = ActiveBackend();
  ~BackendGuard() { SetActiveBackend(saved); }
};

std::vector<double> RandomVector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = g(rng);
  return v;
}

TEST_CASE("dispatch") {
  CHECK(BackendAvailable(Backend::kScalar));
  CHECK(BackendAvailable(DetectBackend()));
  CHECK(std::string(BackendName(Backend::kAvx2)) == "avx2");
  MESSAGE("active backend: " << BackendName(ActiveBackend()));
  BackendGuard guard;
  SetActiveBackend(Backend::kScalar);
  CHECK(ActiveBackend() == Backend::kScalar);
  for (Backend b : {Backend::kAvx2, Backend::kNeon}) {
    if (!BackendAvailable(b)) CHECK_THROWS_AS(SetActiveBackend(b), Error);
  }
}

TEST_CASE("vector kernels agree with the scalar reference") {
  std::mt19937_64 rng(1);
  const KernelTable& ref = Kernels(Backend::kScalar);
  for (Backend b : VectorBackends()) {
    CAPTURE(BackendName(b));
    const KernelTable& vec = Kernels(b);
    // Every remainder length around the vector width, plus long inputs.
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 1000u, 1003u}) {
      CAPTURE(n);
      const std::vector<double> x = RandomVector(rng, n);
      const std::vector<double> y = RandomVector(rng, n);
      double abs_dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) abs_dot += std::abs(x[i] * y[i]);
      const double tol = 1e-14 * (abs_dot + 1.0) * std::sqrt(static_cast<double>(n) + 1.0);
      CHECK(std::abs(vec.dot(x.data(), y.data(), n) - ref.dot(x.data(), y.data(), n)) <= tol);
      const double sd = ref.squared_distance(x.data(), y.data(), n);
      CHECK(std::abs(vec.squared_distance(x.data(), y.data(), n) - sd) <=
            1e-14 * (sd + 1.0) * std::sqrt(static_cast<double>(n) + 1.0));
      std::vector<double> a = y, c = y;
      ref.axpy(0.75, x.data(), a.data(), n);
      vec.axpy(0.75, x.data(), c.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(a[i] - c[i]) <= 1e-15 * (std::abs(a[i]) + 1.0));
    }
    // Exactly representable inputs give bit-identical results.
    std::vector<double> ints(37), twos(37, 2.0);
    for (std::size_t i = 0; i < ints.size(); ++i) ints[i] = static_cast<double>(i);
    CHECK(vec.dot(ints.data(), twos.data(), 37) == ref.dot(ints.data(), twos.data(), 37));
    CHECK(vec.squared_distance(ints.data(), twos.data(), 37) ==
          ref.squared_distance(ints.data(), twos.data(), 37));
  }
  if (VectorBackends().empty()) MESSAGE("no vector backend on this host; scalar only");
}

TEST_CASE("span wrappers validate lengths") {
  const std::vector<double> a = {1, 2, 3}, b = {4, 5};
  std::vector<double> out(2);
  CHECK_THROWS_AS(Dot(a, b), Error);
  CHECK_THROWS_AS(SquaredDistance(a, b), Error);
  CHECK_THROWS_AS(Axpy(1.0, a, out), Error);
  CHECK(Dot(b, b) == 41.0);
}

TEST_CASE("algorithms give the same answers under every backend") {
  BackendGuard guard;
  std::mt19937_64 rng(2);
  const Matrix z = testing::RandomMatrix(rng, 9, 40);
  const dpp::PsdKernel kernel = dpp::GramKernel(z, 1.0);
  const FeatureMatrix pool(z);
  IndexList cands(40);
  for (Index i = 0; i < 40; ++i) cands[i] = i;
  const Index covered[] = {0};

  SetActiveBackend(Backend::kScalar);
  const dpp::GreedyResult greedy_ref = dpp::GreedyMap(kernel, 9);
  const IndexList kcenter_ref = SelectKCenter(pool, cands, covered, 10);
  const data::KMeansResult kmeans_ref = data::KMeans(pool, 5, 3);
  for (Backend b : VectorBackends()) {
    CAPTURE(BackendName(b));
    SetActiveBackend(b);
    const dpp::GreedyResult greedy = dpp::GreedyMap(kernel, 9);
    CHECK(greedy.indices == greedy_ref.indices);
    for (Index i = 0; i < greedy.marginal_gains.size(); ++i) {
      CHECK(greedy.marginal_gains[i] ==
            doctest::Approx(greedy_ref.marginal_gains[i]).epsilon(1e-10));
    }
    CHECK(SelectKCenter(pool, cands, covered, 10) == kcenter_ref);
    CHECK(data::KMeans(pool, 5, 3).assignment == kmeans_ref.assignment);
  }
}

}  // namespace
}  // namespace rddpp::simd
