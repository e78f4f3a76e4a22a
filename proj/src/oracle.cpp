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

#include "qnute/oracle.hpp"

#include <cmath>

#include <fmt/format.h>

#include "qnute/errors.hpp"
#include "qnute/linalg.hpp"

namespace qnute::oracle {

CMatrix propagator(const PauliSum& h, double delta_t) {
  return linalg::expm(dense_matrix(h, h.num_qubits()) * Complex{delta_t, 0.0});
}

ExactStep exact_step(const StateVector& state, const PauliSum& h, double delta_t) {
  if (!h.empty() && h.num_qubits() != state.num_qubits()) {
    throw DimensionError(fmt::format("{}-qubit generator on a {}-qubit state", h.num_qubits(),
                                     state.num_qubits()));
  }
  if (state.num_qubits() > kMaxDenseQubits) {
    throw CapacityError(fmt::format("exact steps are limited to {} qubits", kMaxDenseQubits));
  }
  if (h.empty()) return {state, state.norm()};
  StateVector out(CVector(propagator(h, delta_t) * state.amplitudes()));
  const double norm = out.normalize();
  return {std::move(out), norm};
}

namespace {

std::vector<CMatrix> propagators(std::span<const HamiltonianTerm> terms, std::size_t n,
                                 double delta_t) {
  if (n > kMaxDenseQubits) {
    throw CapacityError(fmt::format("exact evolution is limited to {} qubits", kMaxDenseQubits));
  }
  std::vector<CMatrix> out;
  out.reserve(terms.size());
  const auto dim = Eigen::Index{1} << n;
  for (const auto& t : terms) {
    if (t.pauli.empty()) {
      out.push_back(CMatrix::Identity(dim, dim));
      continue;
    }
    if (t.pauli.num_qubits() != n) {
      throw DimensionError(fmt::format("{}-qubit term on a {}-qubit register",
                                       t.pauli.num_qubits(), n));
    }
    out.push_back(propagator(t.pauli, delta_t));
  }
  return out;
}

}  // namespace

Trajectory exact_trajectory(const ScaledState& initial, std::span<const HamiltonianTerm> terms,
                            const QnuteConfig& cfg) {
  const std::size_t n = initial.state.num_qubits();
  cfg.validate(n);
  const auto props = propagators(terms, n, cfg.delta_t);

  Trajectory traj;
  traj.terms_per_step = terms.size();
  traj.delta_t = cfg.delta_t;
  traj.states.reserve(cfg.num_steps + 1);
  traj.reports.reserve(cfg.num_steps * terms.size());
  traj.states.push_back(initial);

  ScaledState current = initial;
  for (std::size_t step = 0; step < cfg.num_steps; ++step) {
    for (const auto& prop : props) {
      StateVector next(CVector(prop * current.state.amplitudes()));
      const double norm = next.normalize();
      current = ScaledState{std::move(next), current.scale * norm};
      StepReport report;
      report.c = norm;
      traj.reports.push_back(std::move(report));
    }
    traj.states.push_back(current);
  }
  return traj;
}

FidelityStats fidelity_stats(const Trajectory& qnute_traj, const Trajectory& exact_traj) {
  if (qnute_traj.states.size() != exact_traj.states.size()) {
    throw DimensionError(fmt::format("trajectories have {} and {} states",
                                     qnute_traj.states.size(), exact_traj.states.size()));
  }
  FidelityStats stats;
  for (std::size_t k = 1; k < qnute_traj.states.size(); ++k) {
    stats.per_step.push_back(fidelity(qnute_traj.states[k].state, exact_traj.states[k].state));
  }
  if (stats.per_step.empty()) return stats;
  const auto count = static_cast<double>(stats.per_step.size());
  double sum = 0.0;
  for (double f : stats.per_step) sum += f;
  stats.mean = sum / count;
  double var = 0.0;
  for (double f : stats.per_step) var += (f - stats.mean) * (f - stats.mean);
  stats.std = std::sqrt(var / count);
  return stats;
}

std::vector<double> evolve_samples(std::span<const double> samples,
                                   std::span<const HamiltonianTerm> terms,
                                   const QnuteConfig& cfg) {
  CVector u(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t k = 0; k < samples.size(); ++k) u[static_cast<Eigen::Index>(k)] = samples[k];
  const StateVector shape(u);  // validates the power-of-two length
  cfg.validate(shape.num_qubits());
  const auto props = propagators(terms, shape.num_qubits(), cfg.delta_t);
  for (std::size_t step = 0; step < cfg.num_steps; ++step) {
    for (const auto& prop : props) u = prop * u;
  }
  std::vector<double> out(samples.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = u[static_cast<Eigen::Index>(k)].real();
  return out;
}

std::vector<double> reference_pde_solution(const market::OptionContract& contract,
                                           const Grid& grid, const BSParams& p,
                                           const QnuteConfig& cfg) {
  const auto payoff = market::payoff_samples(contract, grid);
  const auto terms = market::black_scholes_terms(grid, p, cfg);
  return evolve_samples(payoff, terms, cfg);
}

}  // namespace qnute::oracle
