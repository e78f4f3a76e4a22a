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
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qnute/pauli.hpp"

namespace qnute {

/** 2^n equally spaced asset prices x_k = x0 + k h, h = (xN - x0) / (2^n - 1). */
class Grid {
 public:
  Grid(double x0, double xN, std::size_t n);

  double x0() const { return x0_; }
  double xN() const { return xN_; }
  std::size_t num_qubits() const { return n_; }
  std::size_t size() const { return std::size_t{1} << n_; }
  double spacing() const { return h_; }
  double x(std::size_t k) const;
  std::vector<double> points() const;

 private:
  double x0_;
  double xN_;
  std::size_t n_;
  double h_;
};

/** Constant risk-free rate r (1/year) and volatility sigma (1/sqrt(year)). */
struct BSParams {
  double r = 0.04;
  double sigma = 0.2;

  void validate() const;
};

enum class Boundary { central, linear };

/**
 * Real tridiagonal generator L of du/dtau = L u.
 * alpha[k-1] is the sub-diagonal entry of row k (k >= 1), gamma[k] the
 * diagonal and beta[k] the super-diagonal entry of row k (k < N-1).
 */
struct TridiagonalOperator {
  std::vector<double> alpha;
  std::vector<double> gamma;
  std::vector<double> beta;
  Boundary boundary = Boundary::central;

  std::size_t size() const { return gamma.size(); }
  Eigen::MatrixXd dense() const;
  std::vector<double> apply(std::span<const double> u) const;
};

/** Central-difference Black-Scholes coefficients on every row. */
TridiagonalOperator bs_coefficients(const Grid& grid, const BSParams& p);

/**
 * Replaces the first and last rows with the first-order one-sided
 * differences of a function linear near the edges. Already-linear input is
 * returned unchanged.
 */
TridiagonalOperator apply_linear_bc(TridiagonalOperator t, const Grid& grid,
                                    const BSParams& p);

/** diag(0, 1, ..., 2^n - 1). */
PauliSum chi_matrix(std::size_t n);
/** diag(0, 1, 4, ..., (2^n - 1)^2), built by its own recursion. */
PauliSum chi_squared_matrix(std::size_t n);
/** Tridiagonal (-1, 0, 1): 2h times the central first derivative. */
PauliSum d1_matrix(std::size_t n);
/** Tridiagonal (1, -2, 1): h^2 times the central second derivative. */
PauliSum d2_matrix(std::size_t n);

/**
 * The discretised Black-Scholes generator -iH in the Pauli basis. The
 * returned operator is real; its dense form equals the tridiagonal builder
 * (with apply_linear_bc for Boundary::linear). Linear boundaries need n >= 2.
 */
PauliSum build_bs_pauli(const Grid& grid, const BSParams& p, Boundary boundary);

/** One Trotter factor h_m of H = sum_m i h_m. */
struct HamiltonianTerm {
  PauliSum pauli;
  /** Union of the supports of the strings in `pauli`, ascending. */
  std::vector<std::size_t> support;
  /** The D adjacent qubits assigned to the fitted unitary. */
  std::vector<std::size_t> domain;
};

struct TermStrategy {
  enum class Kind { single, windows };

  Kind kind = Kind::single;
  std::size_t domain_size = 0;
  std::size_t stride = 1;

  static TermStrategy single() { return {}; }
  static TermStrategy windows(std::size_t d, std::size_t stride = 1) {
    return {Kind::windows, d, stride};
  }
};

/**
 * Splits a generator into Trotter terms.
 *
 * single: one term acting on the whole register.
 * windows(D, stride): windows of D adjacent qubits start at multiples of
 * `stride` (plus the last admissible start). Each string goes to the
 * window containing its support that is closest to the centred placement
 * (support midpoint, ties toward the lower qubit, clipped to the register);
 * strings wider than D go to the window nearest that placement. Terms are
 * ordered by window start and their sum is the input.
 */
std::vector<HamiltonianTerm> split_terms(const PauliSum& hsum, const TermStrategy& strategy);

/**
 * D adjacent qubits centred on `support` (ties toward lower index, clipped
 * to [0, n)). An empty support is placed at the start of the register.
 */
std::vector<std::size_t> centered_window(std::span<const std::size_t> support,
                                         std::size_t d, std::size_t n);

}  // namespace qnute
