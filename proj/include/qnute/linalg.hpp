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

#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "qnute/pauli.hpp"

namespace qnute::linalg {

/**
 * Matrix exponential by scaling and squaring with a Taylor kernel. The
 * argument is scaled until its 1-norm is at most 1/2, the series is summed
 * to machine precision and the result squared back.
 */
CMatrix expm(const CMatrix& a);

struct PinvSolution {
  Eigen::VectorXd x;
  /** |G x - b|_2 */
  double residual = 0.0;
  /** Number of eigenpairs kept. */
  std::size_t rank = 0;
};

/**
 * Minimal-norm solution of the real symmetric system G x = b. Eigenvalues
 * not exceeding rel_tol * max-eigenvalue are discarded. Throws
 * SingularSystemError if nothing survives the cutoff.
 */
PinvSolution solve_symmetric_pinv(const Eigen::MatrixXd& g, const Eigen::VectorXd& b,
                                  double rel_tol);

/**
 * Same contract as solve_symmetric_pinv for G = weight * W^T W, without
 * forming G. The eigenpairs of G with nonzero eigenvalue are recovered from
 * the smaller matrix W W^T, so the cost scales with rows(W) rather than
 * cols(W).
 */
PinvSolution solve_gram_pinv(const Eigen::MatrixXd& w, double weight,
                             const Eigen::VectorXd& b, double rel_tol);

}  // namespace qnute::linalg
