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
#include <map>
#include <random>

#include "doctest.h"
#include "rddpp/dpp.hpp"
#include "rddpp/error.hpp"
#include "rddpp/linalg.hpp"
#include "rddpp/ratedist.hpp"
#include "rddpp/selection.hpp"
#include "support/oracles.hpp"

namespace rddpp {
namespace {

using testing::OracleCodingRate;
using testing::OracleSdiv;
using testing::RandomLabels;
using testing::RandomMatrix;

Vector Basis(Index d, Index i) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d));
  v[static_cast<Eigen::Index>(i)] = 1.0;
  return v;
}

IndexList Iota(Index n) {
  IndexList out(n);
  for (Index i = 0; i < n; ++i) out[i] = i;
  return out;
}

TEST_CASE("quality score examples") {
  const RateConfig rate;
  SUBCASE("empty selection, semantic mode") {
    const FeatureMatrix empty = FeatureMatrix::Empty(3, true, 2);
    CHECK(QualityScore(empty, Basis(3, 0), 1, QualityMode::kSemanticDiversity) == 0.0);
    const QualityScorer scorer(empty, QualityMode::kSemanticDiversity);
    CHECK(scorer.Score(Basis(3, 0), 1) == 0.0);
  }
  SUBCASE("orthogonal candidate of a new class scores positive") {
    Matrix z = Matrix::Zero(3, 2);
    z(0, 0) = 1.0;
    z(1, 1) = 1.0;
    const FeatureMatrix sel(z, {0, 0}, 2);
    const double q = QualityScore(sel, Basis(3, 2), 1, QualityMode::kSemanticDiversity);
    CHECK(q == doctest::Approx(0.57621793073880023).epsilon(1e-12));
    const QualityScorer scorer(sel, QualityMode::kSemanticDiversity);
    CHECK(scorer.Score(Basis(3, 2), 1) == doctest::Approx(q).epsilon(1e-9));
  }
  SUBCASE("duplicate scores no more than a new direction of the same class") {
    Matrix z = Matrix::Zero(3, 2);
    z(0, 0) = 1.0;
    z(1, 1) = 1.0;
    const FeatureMatrix sel(z, {0, 1});
    const double dup = QualityScore(sel, z.col(0), 0, QualityMode::kSemanticDiversity);
    const double fresh = QualityScore(sel, Basis(3, 2), 0, QualityMode::kSemanticDiversity);
    CHECK(dup == doctest::Approx(0.54976783677545749).epsilon(1e-12));
    CHECK(fresh == doctest::Approx(0.57621793073880023).epsilon(1e-12));
    CHECK(dup <= fresh);
  }
  SUBCASE("rate-gain mode is the coding rate of the extended matrix") {
    std::mt19937_64 rng(31);
    const Matrix z = RandomMatrix(rng, 4, 3);
    const Vector x = RandomMatrix(rng, 4, 1).col(0);
    Matrix ext(4, 4);
    ext << z, x;
    const FeatureMatrix sel(z);
    CHECK(QualityScore(sel, x, std::nullopt, QualityMode::kRateGain) ==
          doctest::Approx(OracleCodingRate(ext, 0.5)).epsilon(1e-10));
  }
  SUBCASE("errors") {
    const FeatureMatrix sel(Matrix::Ones(3, 2), {0, 1});
    CHECK_THROWS_AS(QualityScore(sel, Vector::Ones(2), 0, QualityMode::kSemanticDiversity),
                    Error);
    CHECK_THROWS_AS(
        QualityScore(sel, Vector::Ones(3), std::nullopt, QualityMode::kSemanticDiversity),
        Error);
    CHECK_THROWS_AS(QualityScore(FeatureMatrix(Matrix::Ones(3, 2)), Vector::Ones(3), 0,
                                 QualityMode::kSemanticDiversity),
                    Error);
  }
}

TEST_CASE("fast scorer matches the dense oracle") {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<int> dim(1, 9);
  for (int trial = 0; trial < 60; ++trial) {
    const Index d = dim(rng);
    const Index n = dim(rng) - 1;  // includes the empty selection
    const int classes = std::uniform_int_distribution<int>(1, 3)(rng);
    const Matrix z = RandomMatrix(rng, d, n);
    const std::vector<int> labels = RandomLabels(rng, n, classes);
    const FeatureMatrix sel(z, labels, classes);
    const Matrix cands = RandomMatrix(rng, d, 5);
    const std::vector<int> cand_labels = RandomLabels(rng, 5, classes);
    const FeatureMatrix pool(cands, cand_labels, classes);
    for (QualityMode mode : {QualityMode::kSemanticDiversity, QualityMode::kRateGain}) {
      const QualityScorer scorer(sel, mode);
      const std::vector<double> all = scorer.ScoreAll(pool, Iota(5));
      for (Index c = 0; c < 5; ++c) {
        Matrix ext(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(n + 1));
        ext << z, cands.col(static_cast<Eigen::Index>(c));
        std::vector<int> ext_labels = labels;
        ext_labels.push_back(cand_labels[c]);
        const double oracle = mode == QualityMode::kSemanticDiversity
                                  ? std::max(0.0, OracleSdiv(ext, ext_labels, 0.5))
                                  : OracleCodingRate(ext, 0.5);
        CHECK(all[c] == doctest::Approx(oracle).epsilon(1e-9).scale(1.0));
        CHECK(QualityScore(sel, cands.col(static_cast<Eigen::Index>(c)), cand_labels[c], mode) ==
              doctest::Approx(oracle).epsilon(1e-9).scale(1.0));
      }
    }
  }
}

TEST_CASE("quality score minus sdiv is the marginal gain") {
  std::mt19937_64 rng(33);
  const Matrix z = RandomMatrix(rng, 5, 6);
  const std::vector<int> labels = {0, 1, 1, 0, 2, 1};
  const FeatureMatrix sel(z, labels);
  const Vector x = RandomMatrix(rng, 5, 1).col(0);
  Matrix ext(5, 7);
  ext << z, x;
  std::vector<int> ext_labels = labels;
  ext_labels.push_back(2);
  const double gain = QualityScore(sel, x, 2, QualityMode::kSemanticDiversity) -
                      SemanticDiversity(sel);
  CHECK(gain == doctest::Approx(OracleSdiv(ext, ext_labels, 0.5) - OracleSdiv(z, labels, 0.5))
                    .epsilon(1e-9)
                    .scale(1.0));
}

TEST_CASE("quality-diversity kernel") {
  SUBCASE("zero quality gives the zero kernel") {
    // Single-class world: every sdiv is zero.
    std::mt19937_64 rng(34);
    const FeatureMatrix sel(RandomMatrix(rng, 3, 2), {0, 0});
    const FeatureMatrix pool(RandomMatrix(rng, 3, 4), {0, 0, 0, 0});
    const QdKernel qd = BuildQdKernel(sel, pool, Iota(4), QualityMode::kSemanticDiversity);
    CHECK(qd.kernel.matrix().isZero());
  }
  SUBCASE("orthonormal candidates with equal scores") {
    const FeatureMatrix sel = FeatureMatrix::Empty(4, false);
    const FeatureMatrix pool(Matrix(Matrix::Identity(4, 4)));
    const QdKernel qd = BuildQdKernel(sel, pool, Iota(4), QualityMode::kRateGain);
    const double phi = qd.quality[0];
    CHECK(phi > 0.0);
    // alpha for n + 1 = 1 sample in d = 4: 4 / 0.5 = 8.
    CHECK(qd.kernel.matrix().isApprox(phi * phi * 8.0 * Matrix::Identity(4, 4)));
  }
  SUBCASE("entrywise against scalar recomputation, and PSD") {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 20; ++trial) {
      const FeatureMatrix sel(RandomMatrix(rng, 5, 4), RandomLabels(rng, 4, 3), 3);
      const FeatureMatrix pool(RandomMatrix(rng, 5, 6), RandomLabels(rng, 6, 3), 3);
      const IndexList cands = {5, 0, 3, 2};
      for (QualityMode mode : {QualityMode::kSemanticDiversity, QualityMode::kRateGain}) {
        const QdKernel qd = BuildQdKernel(sel, pool, cands, mode);
        CHECK(qd.candidate_ids == cands);
        const double alpha = mode == QualityMode::kRateGain ? 5.0 / (5.0 * 0.5) : 1.0;
        for (Index a = 0; a < 4; ++a) {
          const double qa = QualityScore(sel, pool.column(cands[a]), pool.label(cands[a]), mode);
          CHECK(qd.quality[a] == doctest::Approx(qa).epsilon(1e-9).scale(1.0));
          for (Index b = 0; b < 4; ++b) {
            const double g = alpha * pool.column(cands[a]).dot(pool.column(cands[b]));
            CHECK(std::abs(qd.kernel(a, b) - qd.quality[a] * qd.quality[b] * g) <= 1e-12 * std::max(1.0, std::abs(qd.kernel(a, b))));
          }
        }
        const auto range = linalg::SymmetricEigenRange(qd.kernel.matrix());
        CHECK(range.min >= -1e-8 * std::max(1.0, range.max));
      }
    }
  }
}

TEST_CASE("diversity round") {
  const RateConfig rate;
  SUBCASE("k=1 maximizes the kernel diagonal") {
    std::mt19937_64 rng(36);
    const FeatureMatrix sel(RandomMatrix(rng, 4, 3), {0, 1, 0});
    const FeatureMatrix pool(RandomMatrix(rng, 4, 7), RandomLabels(rng, 7, 2));
    const IndexList cands = Iota(7);
    const QdKernel qd = BuildQdKernel(sel, pool, cands, QualityMode::kSemanticDiversity);
    Index best = 0;
    for (Index i = 1; i < 7; ++i) {
      if (qd.kernel(i, i) > qd.kernel(best, best)) best = i;
    }
    const RoundChoice r =
        SelectRoundDiversity(sel, pool, cands, 1, QualityMode::kSemanticDiversity);
    CHECK(r.chosen == IndexList{best});
  }
  SUBCASE("duplicates are never both chosen; marginal-rate-gain may pick them") {
    // Two copies of a strong candidate plus a weaker distinct one.
    Matrix z = Matrix::Zero(3, 2);
    z(0, 0) = 1.0;
    z(1, 1) = 1.0;
    const FeatureMatrix sel(z, {0, 1});
    Matrix p(3, 3);
    p.col(0) = Vector::Constant(3, 1.0);
    p.col(1) = Vector::Constant(3, 1.0);
    p.col(2) = 0.5 * Basis(3, 2) + 0.2 * Basis(3, 0);
    const FeatureMatrix pool(p, {1, 1, 0});
    const RoundChoice div =
        SelectRoundDiversity(sel, pool, Iota(3), 2, QualityMode::kSemanticDiversity);
    CHECK(std::find(div.chosen.begin(), div.chosen.end(), 2) != div.chosen.end());
    const IndexList mrg =
        SelectMarginalRateGain(sel, pool, Iota(3), 2, QualityMode::kSemanticDiversity);
    CHECK(mrg == IndexList{0, 1});
  }
  SUBCASE("orthonormal equal-quality pool is lexicographic") {
    const FeatureMatrix sel = FeatureMatrix::Empty(5, false);
    const FeatureMatrix pool(Matrix(Matrix::Identity(5, 5)));
    const RoundChoice r = SelectRoundDiversity(sel, pool, Iota(5), 3, QualityMode::kRateGain);
    CHECK(r.chosen == IndexList{0, 1, 2});
  }
  SUBCASE("argument errors") {
    const FeatureMatrix sel = FeatureMatrix::Empty(2, false);
    const FeatureMatrix pool(Matrix(Matrix::Identity(2, 2)));
    CHECK_THROWS_AS(SelectRoundDiversity(sel, pool, Iota(2), 3, QualityMode::kRateGain), Error);
    CHECK_THROWS_AS(SelectRoundDiversity(sel, pool, {}, 1, QualityMode::kRateGain), Error);
  }
}

TEST_CASE("marginal rate gain equals top-k of recomputed scores") {
  std::mt19937_64 rng(37);
  const FeatureMatrix sel(RandomMatrix(rng, 4, 3), {0, 1, 1});
  const FeatureMatrix pool(RandomMatrix(rng, 4, 5), {0, 1, 0, 1, 0});
  std::vector<std::pair<double, Index>> scored;
  for (Index i = 0; i < 5; ++i) {
    scored.emplace_back(-QualityScore(sel, pool.column(i), pool.label(i),
                                      QualityMode::kSemanticDiversity),
                        i);
  }
  std::sort(scored.begin(), scored.end());
  const IndexList got =
      SelectMarginalRateGain(sel, pool, Iota(5), 3, QualityMode::kSemanticDiversity);
  CHECK(got == IndexList{scored[0].second, scored[1].second, scored[2].second});
  const Index single[] = {3};
  CHECK(SelectMarginalRateGain(sel, pool, single, 1, QualityMode::kSemanticDiversity) ==
        IndexList{3});
  // Equal scores: lexicographic.
  const FeatureMatrix flat(Matrix(Matrix::Identity(3, 3)));
  CHECK(SelectMarginalRateGain(FeatureMatrix::Empty(3, false), flat, Iota(3), 2,
                               QualityMode::kRateGain) == IndexList{0, 1});
}

TEST_CASE("uncertainty scores") {
  const double one_hot[] = {0.0, 1.0, 0.0};
  const double uniform4[] = {0.25, 0.25, 0.25, 0.25};
  const double half[] = {0.5, 0.5, 0.0, 0.0};
  const double skew[] = {0.6, 0.3, 0.1};
  CHECK(UncertaintyEntropy(one_hot) == 0.0);
  CHECK(UncertaintyEntropy(uniform4) == doctest::Approx(2.0));
  CHECK(UncertaintyEntropy(half) == doctest::Approx(1.0));
  CHECK(MinMargin(skew) == doctest::Approx(0.3));
  CHECK(MinMargin(one_hot) == doctest::Approx(1.0));
  CHECK(MinMargin(uniform4) == doctest::Approx(0.0));
  const double bad_sum[] = {0.5, 0.6};
  const double negative[] = {1.2, -0.2};
  const double single[] = {1.0};
  CHECK_THROWS_AS(UncertaintyEntropy(bad_sum), Error);
  CHECK_THROWS_AS(UncertaintyEntropy(negative), Error);
  CHECK_THROWS_AS(MinMargin(single), Error);
}

TEST_CASE("uncertainty round") {
  auto column = [](std::initializer_list<double> p) {
    Matrix m(static_cast<Eigen::Index>(p.size()), 1);
    Eigen::Index i = 0;
    for (double v : p) m(i++, 0) = v;
    return m;
  };
  const IndexList cands = {4, 7, 9};
  std::vector<Matrix> probs = {column({1, 0, 0}), column({1.0 / 3, 1.0 / 3, 1.0 / 3}),
                               column({0, 1, 0})};
  CHECK(SelectRoundUncertainty(cands, probs, 1, UncertaintyMode::kEntropy) == IndexList{7});
  CHECK(SelectRoundUncertainty(cands, probs, 1, UncertaintyMode::kMinMargin) == IndexList{7});
  std::vector<Matrix> same(3, column({0.5, 0.5, 0}));
  CHECK(SelectRoundUncertainty(cands, same, 2, UncertaintyMode::kEntropy) == IndexList{4, 7});
  CHECK(SelectRoundUncertainty(cands, same, 2, UncertaintyMode::kMinMargin) == IndexList{4, 7});
  SUBCASE("packet score is the mean over its samples") {
    Matrix packet(2, 2);
    packet << 1, 0.5, 0, 0.5;  // entropies 0 and 1: mean 0.5
    Matrix single(2, 1);
    single << 0.8, 0.2;  // entropy 0.72
    const IndexList two = {0, 1};
    std::vector<Matrix> mixed = {packet, single};
    CHECK(SelectRoundUncertainty(two, mixed, 1, UncertaintyMode::kEntropy) == IndexList{1});
  }
  SUBCASE("missing probabilities") {
    std::vector<Matrix> short_probs = {column({1, 0})};
    CHECK_THROWS_AS(SelectRoundUncertainty(cands, short_probs, 1, UncertaintyMode::kEntropy),
                    Error);
  }
}

TEST_CASE("k-center") {
  Matrix pts(1, 3);
  pts << 0, 1, 10;
  const FeatureMatrix pool(pts);
  const Index covered[] = {0};
  const Index cands[] = {1, 2};
  CHECK(SelectKCenter(pool, cands, covered, 1) == IndexList{2});
  SUBCASE("k = |pool| returns every candidate once") {
    const IndexList all = SelectKCenter(pool, Iota(3), {}, 3);
    IndexList sorted = all;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == Iota(3));
    CHECK(SelectKCenter(pool, Iota(3), {}, 3) == all);
  }
  SUBCASE("duplicates are not both chosen before distinct points") {
    Matrix dup(1, 4);
    dup << 5, 5, 0, 2;
    const FeatureMatrix p(dup);
    const Index cov[] = {2};
    const Index cs[] = {0, 1, 3};
    const IndexList got = SelectKCenter(p, cs, cov, 2);
    CHECK(got == IndexList{0, 3});
  }
  CHECK_THROWS_AS(SelectKCenter(pool, {}, covered, 1), Error);
}

TEST_CASE("DPP coreset") {
  const FeatureMatrix ortho(Matrix(Matrix::Identity(4, 4)));
  CHECK(SelectDppCoreset(ortho, Iota(4), 2).chosen == IndexList{0, 1});
  std::mt19937_64 rng(38);
  const FeatureMatrix pool(RandomMatrix(rng, 3, 6));
  const IndexList cands = {1, 2, 4, 5};
  const RoundChoice r = SelectDppCoreset(pool, cands, 3);
  const dpp::GreedyResult g = dpp::GreedyMap(dpp::GramKernel(pool.Select(cands).data(), 1.0), 3);
  REQUIRE(r.chosen.size() == g.indices.size());
  for (Index i = 0; i < g.indices.size(); ++i) CHECK(r.chosen[i] == cands[g.indices[i]]);
  // Rank 3 features: asking for 4 truncates.
  CHECK(SelectDppCoreset(pool, Iota(6), 4).rank_exhausted);
}

TEST_CASE("random selection") {
  std::mt19937_64 a(5), b(5);
  const IndexList pool = {3, 8, 13, 21, 34};
  CHECK(SelectRandom(pool, 3, a) == SelectRandom(pool, 3, b));
  IndexList perm = SelectRandom(pool, 5, a);
  std::sort(perm.begin(), perm.end());
  CHECK(perm == pool);
  CHECK_THROWS_AS(SelectRandom(pool, 6, a), Error);
  // 10,000 draws of one item from four: each count within 5 sigma of 2500.
  std::mt19937_64 rng(39);
  std::map<Index, int> counts;
  const IndexList four = {0, 1, 2, 3};
  for (int t = 0; t < 10000; ++t) ++counts[SelectRandom(four, 1, rng)[0]];
  const double sigma = std::sqrt(10000 * 0.25 * 0.75);
  for (Index i = 0; i < 4; ++i) CHECK(std::abs(counts[i] - 2500) <= 5 * sigma);
}

TEST_CASE("bootstrap subsample") {
  std::mt19937_64 rng(40);
  const FeatureMatrix sel(RandomMatrix(rng, 3, 10), RandomLabels(rng, 10, 2));
  CHECK(BootstrapSubsample(sel, 0, rng).size() == 10);
  CHECK(BootstrapSubsample(sel, 20, rng).size() == 10);
  const FeatureMatrix sub = BootstrapSubsample(sel, 4, rng);
  CHECK(sub.size() == 4);
  CHECK(sub.has_labels());
}

TEST_CASE("enum parsing round trips") {
  for (Strategy s : {Strategy::kRdDppBimodal, Strategy::kRdDppDiversityOnly,
                     Strategy::kMarginalRateGain, Strategy::kEntropy, Strategy::kMinMargin,
                     Strategy::kKCenter, Strategy::kDppCoreset, Strategy::kRandom}) {
    CHECK(ParseStrategy(ToString(s)) == s);
  }
  CHECK(ParseQualityMode("rate-gain") == QualityMode::kRateGain);
  CHECK(ParseUncertaintyMode("min-margin") == UncertaintyMode::kMinMargin);
  CHECK(ParseMode(ToString(Mode::kUncertainty)) == Mode::kUncertainty);
  CHECK_THROWS_AS(ParseStrategy("greedy"), Error);
  SchedulerConfig cfg;
  cfg.k = 0;
  CHECK_THROWS_AS(cfg.Validate(), Error);
  cfg.k = 1;
  cfg.phi0 = std::nan("");
  CHECK_THROWS_AS(cfg.Validate(), Error);
}

}  // namespace
}  // namespace rddpp
