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

#include "doctest.h"
#include "rddpp/error.hpp"
#include "rddpp/linalg.hpp"
#include "rddpp/ratedist.hpp"
#include "support/oracles.hpp"

namespace rddpp {
namespace {

using testing::OracleCodingRate;
using testing::OracleHadamard;
using testing::OracleSdiv;
using testing::RandomLabels;
using testing::RandomMatrix;

constexpr double kLog2Of3 = 1.5849625007211563;

TEST_CASE("coding rate of zeros is zero") {
  CHECK(CodingRate(Matrix::Zero(3, 2)) == 0.0);
  CHECK(HadamardUpperBound(Matrix::Zero(3, 2)) == 0.0);
}

TEST_CASE("coding rate of a scalar matches the closed form") {
  Matrix z(1, 1);
  z << 1.0;
  CHECK(CodingRate(z) == doctest::Approx(0.79248125036057815).epsilon(1e-14));
}

TEST_CASE("identity matrix: rate and bound closed forms") {
  const Matrix z = Matrix::Identity(2, 2);
  CHECK(CodingRate(z) == doctest::Approx(kLog2Of3).epsilon(1e-14));
  CHECK(HadamardUpperBound(z) == doctest::Approx(2.0 * kLog2Of3).epsilon(1e-14));
  CHECK(HadamardUpperBound(z) >= CodingRate(z));
}

TEST_CASE("primal, dual and smaller Gram forms agree") {
  std::mt19937_64 rng(11);
  for (auto [d, n] : {std::pair{7, 5}, std::pair{5, 7}, std::pair{6, 6}, std::pair{1, 9}}) {
    const Matrix z = RandomMatrix(rng, d, n);
    const double outer = CodingRate(z, {}, GramForm::kOuter);
    const double inner = CodingRate(z, {}, GramForm::kInner);
    const double small = CodingRate(z);
    CHECK(outer == doctest::Approx(inner).epsilon(1e-12));
    CHECK(small == doctest::Approx(outer).epsilon(1e-12));
    CHECK(small == doctest::Approx(OracleCodingRate(z, 0.5)).epsilon(1e-10));
  }
}

TEST_CASE("coding rate property sweep") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> dim(1, 12);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = dim(rng);
    const Index n = dim(rng);
    const Matrix z = RandomMatrix(rng, d, n);
    const double rate = CodingRate(z);
    CHECK(rate >= 0.0);
    // Hadamard bound dominates.
    CHECK(HadamardUpperBound(z) - rate >= -1e-9);
    CHECK(HadamardUpperBound(z) == doctest::Approx(OracleHadamard(z, 0.5)).epsilon(1e-12));
    // Orthogonal invariance.
    const Matrix q = Eigen::HouseholderQR<Matrix>(RandomMatrix(rng, d, d)).householderQ();
    CHECK(CodingRate(Matrix(q * z)) == doctest::Approx(rate).epsilon(1e-9));
    // Column permutation invariance.
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(static_cast<Eigen::Index>(n));
    perm.setIdentity();
    std::shuffle(perm.indices().data(), perm.indices().data() + n, rng);
    CHECK(CodingRate(Matrix(z * perm)) == doctest::Approx(rate).epsilon(1e-10));
    // Scale monotonicity.
    CHECK(CodingRate(Matrix(1.5 * z)) > rate);
  }
}

TEST_CASE("eps2 controls the scale") {
  std::mt19937_64 rng(13);
  const Matrix z = RandomMatrix(rng, 4, 6);
  CHECK(CodingRate(z, {0.1}) > CodingRate(z, {0.5}));
  CHECK(CodingRate(z, {2.0}) == doctest::Approx(OracleCodingRate(z, 2.0)).epsilon(1e-10));
}

TEST_CASE("rate errors") {
  Matrix z = Matrix::Ones(2, 2);
  CHECK_THROWS_AS(CodingRate(z, {0.0}), Error);
  CHECK_THROWS_AS(CodingRate(z, {-1.0}), Error);
  CHECK_THROWS_AS(CodingRate(Matrix(2, 0)), Error);
  z(0, 0) = std::nan("");
  try {
    CodingRate(z);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInvalidInput);
  }
}

TEST_CASE("class-conditional rate") {
  std::mt19937_64 rng(14);
  const Matrix z = RandomMatrix(rng, 6, 8);
  const std::vector<int> labels = {0, 1, 0, 1, 1, 0, 0, 1};
  const FeatureMatrix fm(z, labels);
  for (int c = 0; c < 2; ++c) {
    CHECK(ClassConditionalRate(fm, c) ==
          doctest::Approx(OracleCodingRate(testing::Columns(z, labels, c), 0.5))
              .epsilon(1e-10));
  }
  SUBCASE("single class covering everything equals the total rate") {
    const FeatureMatrix one(z, std::vector<int>(8, 0));
    CHECK(ClassConditionalRate(one, 0) == doctest::Approx(CodingRate(z)).epsilon(1e-14));
  }
  SUBCASE("a zero column class has zero rate") {
    Matrix zz = z;
    zz.col(3).setZero();
    const FeatureMatrix fm2(zz, {0, 0, 0, 1, 0, 0, 0, 0});
    CHECK(ClassConditionalRate(fm2, 1) == 0.0);
  }
  SUBCASE("errors") {
    const FeatureMatrix gap(z, labels, 3);
    CHECK_THROWS_WITH_AS(ClassConditionalRate(gap, 2), doctest::Contains("no samples"), Error);
    CHECK_THROWS_AS(ClassConditionalRate(fm, 5), Error);
    CHECK_THROWS_AS(ClassConditionalRate(FeatureMatrix(z), 0), Error);
  }
}

TEST_CASE("semantic diversity") {
  SUBCASE("single class is exactly zero") {
    std::mt19937_64 rng(15);
    const FeatureMatrix fm(RandomMatrix(rng, 5, 9), std::vector<int>(9, 2));
    CHECK(SemanticDiversity(fm) == 0.0);
    CHECK(SemanticDiversityRaw(fm) == 0.0);
  }
  SUBCASE("two basis-vector classes") {
    Matrix z = Matrix::Zero(4, 4);
    z(0, 0) = z(0, 1) = 1.0;
    z(1, 2) = z(1, 3) = 1.0;
    const FeatureMatrix fm(z, {0, 0, 1, 1});
    // log2 5 - log2 3
    CHECK(SemanticDiversity(fm) == doctest::Approx(0.736965594166206).epsilon(1e-13));
  }
  SUBCASE("all zeros with any labels") {
    const FeatureMatrix fm(Matrix::Zero(3, 4), {0, 1, 2, 1});
    CHECK(SemanticDiversity(fm) == 0.0);
  }
  SUBCASE("random instances match the dense oracle and stay non-negative") {
    std::mt19937_64 rng(16);
    std::uniform_int_distribution<int> dim(1, 10);
    std::uniform_int_distribution<int> cls(1, 4);
    for (int trial = 0; trial < 100; ++trial) {
      const Index d = dim(rng);
      const Index n = dim(rng);
      const Matrix z = RandomMatrix(rng, d, n);
      const std::vector<int> labels = RandomLabels(rng, n, cls(rng));
      const FeatureMatrix fm(z, labels);
      const double raw = SemanticDiversityRaw(fm);
      CHECK(raw >= -1e-8);
      CHECK(raw == doctest::Approx(OracleSdiv(z, labels, 0.5)).epsilon(1e-9));
      CHECK(SemanticDiversity(fm) >= 0.0);
    }
  }
  SUBCASE("label-consistent permutation invariance") {
    std::mt19937_64 rng(17);
    const Matrix z = RandomMatrix(rng, 5, 7);
    const std::vector<int> labels = {0, 1, 2, 0, 1, 2, 2};
    const IndexList order = {6, 2, 4, 0, 5, 1, 3};
    const FeatureMatrix fm(z, labels);
    CHECK(SemanticDiversity(fm.Select(order)) ==
          doctest::Approx(SemanticDiversity(fm)).epsilon(1e-10));
  }
  SUBCASE("missing labels") {
    CHECK_THROWS_AS(SemanticDiversity(FeatureMatrix(Matrix::Ones(2, 2))), Error);
  }
}

TEST_CASE("log det helpers") {
  std::mt19937_64 rng(18);
  const Matrix a = RandomMatrix(rng, 5, 3);
  const Matrix gram = a * a.transpose();  // rank 3 of 5
  CHECK(linalg::LogDetIdentityPlus(gram, 2.0) ==
        doctest::Approx(testing::DenseLogAbsDet(Matrix::Identity(5, 5) + 2.0 * gram))
            .epsilon(1e-12));
  CHECK(std::isinf(linalg::LogDetPsd(gram)));
  CHECK(linalg::LogDetPsd(Matrix::Identity(3, 3) * 2.0) ==
        doctest::Approx(3.0 * std::log(2.0)));
  Matrix bad = Matrix::Identity(2, 2);
  bad(1, 1) = -1.0;
  CHECK_THROWS_AS(linalg::LogDetIdentityPlus(bad, 1.0), Error);
  // A tiny negative eigenvalue from rounding is tolerated by the eigen fallback.
  Matrix nearly = gram;
  nearly(4, 4) -= 1e-13;
  CHECK(std::isfinite(linalg::LogDetIdentityPlus(nearly, 1.0)));
  const auto range = linalg::SymmetricEigenRange(Matrix::Identity(3, 3) * 4.0);
  CHECK(range.min == doctest::Approx(4.0));
  CHECK(range.max == doctest::Approx(4.0));
  CHECK(linalg::SmallGram(a).rows() == 3);
  CHECK(linalg::SmallGram(Matrix(a.transpose())).rows() == 3);
}

}  // namespace
}  // namespace rddpp
