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

#include "qnute/grid_hamiltonian.hpp"
#include "qnute/market.hpp"
#include "qnute/pauli.hpp"
#include "qnute/qnute.hpp"
#include "qnute/statevector.hpp"

// Classical ground truth for the QNUTE simulations: dense non-unitary
// evolution, fidelity statistics and discretisation-matched prices.
namespace qnute::oracle {

/** exp(dt * h) as a dense matrix. */
CMatrix propagator(const PauliSum& h, double delta_t);

struct ExactStep {
  StateVector state;
  /** |exp(h dt) psi| */
  double norm = 1.0;
};

ExactStep exact_step(const StateVector& state, const PauliSum& h, double delta_t);

/**
 * The normalised Trotter product (prod_m exp(h_m dt))^N_T applied exactly,
 * with the true norms accumulated into the scale. Reports carry the true
 * per-factor norm in `c`.
 */
Trajectory exact_trajectory(const ScaledState& initial, std::span<const HamiltonianTerm> terms,
                            const QnuteConfig& cfg);

struct FidelityStats {
  double mean = 1.0;
  /** Population standard deviation. */
  double std = 0.0;
  std::vector<double> per_step;
};

/** Fidelity per time step, initial state excluded. */
FidelityStats fidelity_stats(const Trajectory& qnute_traj, const Trajectory& exact_traj);

/** Applies the same Trotter product to an unnormalised sample vector. */
std::vector<double> evolve_samples(std::span<const double> samples,
                                   std::span<const HamiltonianTerm> terms,
                                   const QnuteConfig& cfg);

/** Payoff evolved under the dense linear-boundary generator: u(x_k, T). */
std::vector<double> reference_pde_solution(const market::OptionContract& contract,
                                           const Grid& grid, const BSParams& p,
                                           const QnuteConfig& cfg);

}  // namespace qnute::oracle
