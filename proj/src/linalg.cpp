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

#include "qnute/linalg.hpp"

#include <cmath>

#include <fmt/format.h>

#include "qnute/errors.hpp"

namespace qnute::linalg {

CMatrix expm(const CMatrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError(fmt::format("expm of non-square {}x{} matrix", a.rows(), a.cols()));
  }
  const Eigen::Index dim = a.rows();
  if (dim == 0) return a;
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const CMatrix b = a / std::ldexp(1.0, squarings);

  CMatrix result = CMatrix::Identity(dim, dim);
  CMatrix term = CMatrix::Identity(dim, dim);
  for (int k = 1; k <= 40; ++k) {
    term = (term * b) / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() <= 1e-18 * result.cwiseAbs().maxCoeff()) break;
  }
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

namespace {

void check_rhs(Eigen::Index cols, const Eigen::VectorXd& b) {
  if (b.size() != cols) {
    throw DimensionError(fmt::format("system of size {} with right-hand side of size {}",
                                     cols, b.size()));
  }
}

}  // namespace

PinvSolution solve_symmetric_pinv(const Eigen::MatrixXd& g, const Eigen::VectorXd& b,
                                  double rel_tol) {
  if (g.rows() != g.cols()) {
    throw DimensionError(fmt::format("non-square {}x{} normal matrix", g.rows(), g.cols()));
  }
  check_rhs(g.cols(), b);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const Eigen::MatrixXd& v = eig.eigenvectors();
  const double lambda_max = lambda.size() > 0 ? lambda.cwiseAbs().maxCoeff() : 0.0;
  const double cutoff = rel_tol * lambda_max;

  PinvSolution out;
  out.x = Eigen::VectorXd::Zero(g.cols());
  const Eigen::VectorXd projected = v.transpose() * b;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    if (std::abs(lambda[k]) > cutoff && lambda_max > 0.0) {
      out.x += v.col(k) * (projected[k] / lambda[k]);
      ++out.rank;
    }
  }
  if (out.rank == 0) {
    throw SingularSystemError("every eigenvalue of the normal matrix is below the cutoff");
  }
  out.residual = (g * out.x - b).norm();
  return out;
}

PinvSolution solve_gram_pinv(const Eigen::MatrixXd& w, double weight,
                             const Eigen::VectorXd& b, double rel_tol) {
  check_rhs(w.cols(), b);
  const Eigen::MatrixXd small = w * w.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(small);
  const Eigen::VectorXd& mu = eig.eigenvalues();
  const Eigen::MatrixXd& u = eig.eigenvectors();
  const double mu_max = mu.size() > 0 ? mu.cwiseAbs().maxCoeff() : 0.0;
  const double cutoff = rel_tol * mu_max;

  // With v_k = W^T u_k / sqrt(mu_k) the unit eigenvectors of W^T W,
  // sum_k v_k v_k^T b / (weight mu_k) = W^T sum_k u_k (u_k^T W b) / (weight mu_k^2).
  PinvSolution out;
  const Eigen::VectorXd wb = w * b;
  Eigen::VectorXd combo = Eigen::VectorXd::Zero(w.rows());
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    if (mu[k] > cutoff && mu_max > 0.0) {
      combo += u.col(k) * (u.col(k).dot(wb) / (weight * mu[k] * mu[k]));
      ++out.rank;
    }
  }
  out.x = w.transpose() * combo;
  if (out.rank == 0) {
    throw SingularSystemError("every eigenvalue of the normal matrix is below the cutoff");
  }
  out.residual = (weight * (w.transpose() * (w * out.x)) - b).norm();
  return out;
}

}  // namespace qnute::linalg
