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
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qnute/grid_hamiltonian.hpp"
#include "qnute/pauli.hpp"
#include "qnute/statevector.hpp"

namespace qnute {

/**
 * Which Pauli strings span the fitted Hermitian operator A.
 *
 * full: every non-identity string on the domain.
 * odd_y: strings with an odd number of Y symbols, i.e. the imaginary
 * antisymmetric ones. They generate exactly the real rotations, which is
 * all that is needed when both the state and the generator are real.
 * automatic: odd_y for real problems, full otherwise.
 */
enum class BasisMode { automatic, full, odd_y };

struct SigmaBasis {
  /** Full-register strings, identity outside `domain`, lexicographic order. */
  std::vector<PauliString> strings;
  BasisMode mode = BasisMode::full;
  std::vector<std::size_t> domain;

  std::size_t size() const { return strings.size(); }
};

/** Throws InvalidDomainError for an empty, repeated or non-contiguous domain. */
SigmaBasis sigma_basis(std::span<const std::size_t> domain, std::size_t n, BasisMode mode);

enum class TermSplit { automatic, single, windows };

struct QnuteConfig {
  double delta_t = 3.0 / 500.0;
  std::size_t num_steps = 500;
  /** D; zero means the whole register. */
  std::size_t domain_size = 0;
  BasisMode basis_mode = BasisMode::automatic;
  double lstsq_rel_tol = 1e-8;
  /** automatic: single when D == n, windows of D otherwise. */
  TermSplit term_split = TermSplit::automatic;
  std::size_t window_stride = 1;
  /** Compare each step with the exact normalised step (needs dense exp). */
  bool track_step_fidelity = true;

  std::size_t effective_domain_size(std::size_t n) const;
  TermStrategy term_strategy(std::size_t n) const;
  void validate(std::size_t n) const;
};

struct StepReport {
  /** sqrt(1 + 2 dt Re<h_m>) */
  double c = 1.0;
  std::vector<double> a;
  /** |(S + S^T) a - b|_2 */
  double residual = 0.0;
  /** Fidelity with exp(h_m dt)|psi> / norm; 1 when not tracked. */
  double step_fidelity = 1.0;
};

struct Trajectory {
  /** Initial state followed by the state after every full time step. */
  std::vector<ScaledState> states;
  /** One report per Trotter factor, time-step major. */
  std::vector<StepReport> reports;
  std::size_t terms_per_step = 1;
  double delta_t = 0.0;
  /** N_T * sum_m I_m^2, the number of expectation values a device would need. */
  std::size_t measurement_count = 0;
};

double measure_c(const StateVector& state, const PauliSum& h, double delta_t);

/** S_IJ = <psi| sigma_I sigma_J |psi>. */
CMatrix measure_S(const StateVector& state, const SigmaBasis& basis);

/** b_I = (-2 / c) Im <psi| sigma_I h |psi>. */
Eigen::VectorXd measure_b(const StateVector& state, const SigmaBasis& basis, const PauliSum& h,
                          double c);

struct CoefficientSolution {
  Eigen::VectorXd a;
  double residual = 0.0;
};

/** Minimal-norm solution of (S + S^T) a = b by truncated eigendecomposition. */
CoefficientSolution solve_coefficients(const CMatrix& s, const Eigen::VectorXd& b,
                                       double rel_tol);

/** Qubits the fitted unitary for `term` acts on under domain size d. */
std::vector<std::size_t> unitary_domain(const HamiltonianTerm& term, std::size_t d,
                                        std::size_t n);

/**
 * One QNUTE step: approximates exp(h dt)|psi> / c by a product of Pauli
 * rotations exp(-i a_I sigma_I dt) in ascending basis order, renormalises
 * and multiplies the scale by c.
 */
std::pair<ScaledState, StepReport> trotter_step(const ScaledState& state,
                                                const HamiltonianTerm& term,
                                                const QnuteConfig& cfg);

/** num_steps sweeps over all terms in order. */
Trajectory evolve(const ScaledState& initial, std::span<const HamiltonianTerm> terms,
                  const QnuteConfig& cfg);

/** Resolves BasisMode::automatic for a given problem. */
BasisMode resolve_basis_mode(BasisMode mode, const StateVector& initial,
                             std::span<const HamiltonianTerm> terms);

}  // namespace qnute
