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

#include "rddpp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rddpp/error.hpp"

namespace rddpp::linalg {

Matrix Symmetrized(const Matrix& m) {
  Matrix out = m;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < m.rows(); ++i) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

Matrix OuterGram(const Matrix& z) {
  Matrix g = Matrix::Zero(z.rows(), z.rows());
  g.selfadjointView<Eigen::Lower>().rankUpdate(z);
  return g.selfadjointView<Eigen::Lower>();
}

Matrix InnerGram(const Matrix& z) {
  Matrix g = Matrix::Zero(z.cols(), z.cols());
  g.selfadjointView<Eigen::Lower>().rankUpdate(z.transpose());
  return g.selfadjointView<Eigen::Lower>();
}

Matrix SmallGram(const Matrix& z) {
  return z.rows() <= z.cols() ? OuterGram(z) : InnerGram(z);
}

EigenRange SymmetricEigenRange(const Matrix& m) {
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    Fail(ErrorKind::kNumerical, "eigendecomposition did not converge");
  }
  return {solver.eigenvalues().minCoeff(), solver.eigenvalues().maxCoeff()};
}

double LogDetIdentityPlus(const Matrix& gram, double alpha) {
  const Eigen::Index m = gram.rows();
  if (m == 0) return 0.0;
  Matrix shifted = Symmetrized(gram) * alpha;
  shifted.diagonal().array() += 1.0;
  Eigen::LLT<Matrix> llt(shifted);
  if (llt.info() == Eigen::Success) {
    return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  }

  Eigen::SelfAdjointEigenSolver<Matrix> solver(Symmetrized(gram),
                                               Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    Fail(ErrorKind::kNumerical, "eigendecomposition did not converge");
  }
  const auto& eig = solver.eigenvalues();
  const double scale = std::max(1.0, eig.maxCoeff());
  if (eig.minCoeff() < -kPsdTolerance * scale) {
    Fail(ErrorKind::kNumerical, "Gram matrix is not positive semi-definite (min eigenvalue " +
                                    std::to_string(eig.minCoeff()) + ")");
  }
  double acc = 0.0;
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    acc += std::log1p(alpha * std::max(eig[i], 0.0));
  }
  return acc;
}

double LogDetPsd(const Matrix& m) {
  if (m.rows() == 0) return 0.0;
  const Matrix sym = Symmetrized(m);
  Eigen::LLT<Matrix> llt(sym);
  if (llt.info() == Eigen::Success) {
    const auto diag = llt.matrixLLT().diagonal();
    if (diag.minCoeff() > 0.0) return 2.0 * diag.array().log().sum();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    Fail(ErrorKind::kNumerical, "eigendecomposition did not converge");
  }
  const auto& eig = solver.eigenvalues();
  const double floor = 1e-14 * std::max(1.0, std::abs(eig.maxCoeff()));
  if (eig.minCoeff() <= floor) return -std::numeric_limits<double>::infinity();
  return eig.array().log().sum();
}

}  // namespace rddpp::linalg
