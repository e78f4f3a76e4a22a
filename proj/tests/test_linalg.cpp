// Copyright 2026 The qnute-sim Authors
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

#include <catch_amalgamated.hpp>

#include <unsupported/Eigen/MatrixFunctions>

#include "helpers.hpp"
#include "qnute/errors.hpp"
#include "qnute/linalg.hpp"

using namespace qnute;

TEST_CASE("matrix exponential of small matrices", "[linalg]") {
  CHECK((linalg::expm(CMatrix::Zero(4, 4)) - CMatrix::Identity(4, 4)).norm() == 0.0);
  const CMatrix scalar = linalg::expm(-0.1 * CMatrix::Identity(2, 2));
  CHECK(std::abs(scalar(0, 0) - std::exp(-0.1)) < 1e-15);
  CHECK_THROWS_AS(linalg::expm(CMatrix::Zero(2, 3)), DimensionError);
}

TEST_CASE("matrix exponential against two references", "[linalg][property]") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix a = testing::random_vector(rng, 16).reshaped(4, 4) * 0.3;
    const CMatrix ours = linalg::expm(a);
    CHECK((ours - testing::taylor_exp(a)).cwiseAbs().maxCoeff() < 1e-12);
    const CMatrix eigen_ref = a.exp();
    CHECK((ours - eigen_ref).cwiseAbs().maxCoeff() < 1e-12);
  }
  // Large norms exercise the squaring phase.
  const CMatrix big = testing::random_vector(rng, 64).reshaped(8, 8) * 2.0;
  const CMatrix ref = big.exp();
  CHECK((linalg::expm(big) - ref).norm() / ref.norm() < 1e-11);
}

TEST_CASE("pseudo-inverse on a well-conditioned system", "[linalg]") {
  const Eigen::MatrixXd g = 2.0 * Eigen::MatrixXd::Identity(3, 3);
  Eigen::VectorXd b(3);
  b << 2.0, 0.0, 0.0;
  const auto sol = linalg::solve_symmetric_pinv(g, b, 1e-8);
  CHECK((sol.x - Eigen::Vector3d(1, 0, 0)).norm() < 1e-15);
  CHECK(sol.rank == 3);
  CHECK(sol.residual < 1e-15);

  const auto zero = linalg::solve_symmetric_pinv(g, Eigen::VectorXd::Zero(3), 1e-8);
  CHECK(zero.x.norm() == 0.0);
  CHECK(zero.residual == 0.0);

  CHECK_THROWS_AS(linalg::solve_symmetric_pinv(Eigen::MatrixXd::Zero(2, 2),
                                               Eigen::VectorXd::Ones(2), 1e-8),
                  SingularSystemError);
  CHECK_THROWS_AS(linalg::solve_symmetric_pinv(g, Eigen::VectorXd::Ones(2), 1e-8),
                  DimensionError);
}

TEST_CASE("pseudo-inverse gives the minimal-norm least-squares solution", "[linalg][property]") {
  std::mt19937_64 rng(43);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 10; ++trial) {
    // Rank 3 inside a 6x6 symmetric positive semidefinite matrix.
    Eigen::MatrixXd w(3, 6);
    for (Eigen::Index k = 0; k < w.size(); ++k) w.data()[k] = gauss(rng);
    const Eigen::MatrixXd g = 2.0 * w.transpose() * w;
    Eigen::VectorXd b(6);
    for (Eigen::Index k = 0; k < 6; ++k) b[k] = gauss(rng);

    const Eigen::VectorXd ref = g.completeOrthogonalDecomposition().pseudoInverse() * b;
    const auto sol = linalg::solve_symmetric_pinv(g, b, 1e-8);
    CHECK(sol.rank == 3);
    CHECK((sol.x - ref).norm() < 1e-9 * (1.0 + ref.norm()));
    CHECK(std::abs(sol.residual - (g * ref - b).norm()) < 1e-9);

    const auto factored = linalg::solve_gram_pinv(w, 2.0, b, 1e-8);
    CHECK((factored.x - ref).norm() < 1e-9 * (1.0 + ref.norm()));
    CHECK(std::abs(factored.residual - sol.residual) < 1e-9);
  }
}
