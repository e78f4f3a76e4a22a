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

#include "qnute/qnute.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "qnute/errors.hpp"
#include "qnute/linalg.hpp"
#include "qnute/oracle.hpp"

namespace qnute {

SigmaBasis sigma_basis(std::span<const std::size_t> domain, std::size_t n, BasisMode mode) {
  if (domain.empty()) throw InvalidDomainError("empty unitary domain");
  for (std::size_t k = 0; k < domain.size(); ++k) {
    if (domain[k] >= n || (k > 0 && domain[k] != domain[k - 1] + 1)) {
      throw InvalidDomainError(fmt::format(
          "unitary domain must be a contiguous ascending range inside {} qubits", n));
    }
  }
  if (mode == BasisMode::automatic) {
    throw DomainError("basis mode must be resolved before building a basis");
  }
  const std::size_t d = domain.size();
  if (d > 15) throw CapacityError(fmt::format("a {}-qubit basis is too large", d));

  SigmaBasis basis;
  basis.mode = mode;
  basis.domain.assign(domain.begin(), domain.end());
  std::vector<Pauli> symbols(n, Pauli::I);
  const std::uint64_t count = std::uint64_t{1} << (2 * d);
  for (std::uint64_t j = 1; j < count; ++j) {
    std::size_t num_y = 0;
    for (std::size_t k = 0; k < d; ++k) {
      const auto p = static_cast<Pauli>((j >> (2 * (d - 1 - k))) & 3U);
      symbols[domain[k]] = p;
      num_y += p == Pauli::Y ? 1 : 0;
    }
    if (mode == BasisMode::odd_y && num_y % 2 == 0) continue;
    basis.strings.emplace_back(symbols);
  }
  return basis;
}

std::size_t QnuteConfig::effective_domain_size(std::size_t n) const {
  return domain_size == 0 ? n : domain_size;
}

TermStrategy QnuteConfig::term_strategy(std::size_t n) const {
  const std::size_t d = effective_domain_size(n);
  switch (term_split) {
    case TermSplit::single: return TermStrategy::single();
    case TermSplit::windows: return TermStrategy::windows(d, window_stride);
    case TermSplit::automatic: break;
  }
  return d >= n ? TermStrategy::single() : TermStrategy::windows(d, window_stride);
}

void QnuteConfig::validate(std::size_t n) const {
  if (num_steps > 0 && !(delta_t > 0.0 && std::isfinite(delta_t))) {
    throw DomainError(fmt::format("delta_t = {} must be positive", delta_t));
  }
  const std::size_t d = effective_domain_size(n);
  if (d < 1 || d > n) {
    throw InvalidDomainError(fmt::format("domain size {} must lie in [1, {}]", d, n));
  }
  if (!(lstsq_rel_tol > 0.0 && lstsq_rel_tol < 1.0)) {
    throw DomainError(fmt::format("lstsq_rel_tol = {} must lie in (0, 1)", lstsq_rel_tol));
  }
  if (window_stride == 0) throw InvalidDomainError("window stride must be positive");
}

namespace {

double checked_c(double re_h, double delta_t) {
  const double radicand = 1.0 + 2.0 * delta_t * re_h;
  if (!(radicand > 1e-12)) {
    throw StepSizeError(fmt::format(
        "1 + 2 dt Re<h> = {:.3g} is not positive; reduce the time step (dt = {})", radicand,
        delta_t));
  }
  return std::sqrt(radicand);
}

// Columns [Re(sigma_I psi); Im(sigma_I psi)], so that S + S^T = 2 W^T W.
Eigen::MatrixXd rotated_columns(const CVector& psi, const SigmaBasis& basis) {
  const Eigen::Index dim = psi.size();
  Eigen::MatrixXd w(2 * dim, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const CVector v = apply_string(basis.strings[i], psi);
    w.col(static_cast<Eigen::Index>(i)) << v.real(), v.imag();
  }
  return w;
}

struct PreparedTerm {
  const PauliSum* h = nullptr;
  SigmaBasis basis;
  std::optional<CMatrix> propagator;
};

std::pair<ScaledState, StepReport> step_prepared(const ScaledState& in, const PreparedTerm& term,
                                                 const QnuteConfig& cfg) {
  const CVector& psi = in.state.amplitudes();
  const double dt = cfg.delta_t;
  const CVector hpsi = apply_sum(*term.h, psi);

  StepReport report;
  report.c = checked_c(psi.dot(hpsi).real(), dt);

  const Eigen::MatrixXd w = rotated_columns(psi, term.basis);
  // Im(v^H phi) = v_r . phi_i - v_i . phi_r
  Eigen::VectorXd g(w.rows());
  g << hpsi.imag(), -hpsi.real();
  const Eigen::VectorXd b = (-2.0 / report.c) * (w.transpose() * g);

  const linalg::PinvSolution sol =
      w.cols() <= w.rows()
          ? linalg::solve_symmetric_pinv(2.0 * w.transpose() * w, b, cfg.lstsq_rel_tol)
          : linalg::solve_gram_pinv(w, 2.0, b, cfg.lstsq_rel_tol);
  report.residual = sol.residual;
  report.a.assign(sol.x.data(), sol.x.data() + sol.x.size());

  StateVector out = in.state;
  for (std::size_t i = 0; i < term.basis.size(); ++i) {
    const double angle = report.a[i] * dt;
    if (angle != 0.0) out = apply_pauli_rotation(out, term.basis.strings[i], angle);
  }
  // Rotations are unitary; whatever norm drift remains is folded into the scale.
  const double drift = out.normalize();

  if (term.propagator) {
    StateVector exact(CVector(*term.propagator * psi));
    exact.normalize();
    report.step_fidelity = fidelity(out, exact);
  }
  return {ScaledState{std::move(out), in.scale * report.c * drift}, std::move(report)};
}

PreparedTerm prepare(const HamiltonianTerm& term, BasisMode mode, std::size_t n,
                     const QnuteConfig& cfg) {
  PreparedTerm p;
  p.h = &term.pauli;
  const auto domain = unitary_domain(term, cfg.effective_domain_size(n), n);
  p.basis = sigma_basis(domain, n, mode);
  if (cfg.track_step_fidelity) p.propagator = oracle::propagator(term.pauli, cfg.delta_t);
  return p;
}

void check_term(const HamiltonianTerm& term, std::size_t n) {
  if (!term.pauli.empty() && term.pauli.num_qubits() != n) {
    throw DimensionError(fmt::format("{}-qubit term on a {}-qubit state",
                                     term.pauli.num_qubits(), n));
  }
}

}  // namespace

double measure_c(const StateVector& state, const PauliSum& h, double delta_t) {
  return checked_c(expectation(state, h).real(), delta_t);
}

CMatrix measure_S(const StateVector& state, const SigmaBasis& basis) {
  const Eigen::Index size = static_cast<Eigen::Index>(basis.size());
  CMatrix v(static_cast<Eigen::Index>(state.dim()), size);
  for (Eigen::Index i = 0; i < size; ++i) {
    v.col(i) = apply_string(basis.strings[static_cast<std::size_t>(i)], state.amplitudes());
  }
  // sigma_I is Hermitian, so <psi|sigma_I sigma_J|psi> = (sigma_I psi)^H (sigma_J psi).
  return v.adjoint() * v;
}

Eigen::VectorXd measure_b(const StateVector& state, const SigmaBasis& basis, const PauliSum& h,
                          double c) {
  const CVector hpsi = apply_sum(h, state.amplitudes());
  Eigen::VectorXd b(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const CVector v = apply_string(basis.strings[i], state.amplitudes());
    b[static_cast<Eigen::Index>(i)] = (-2.0 / c) * v.dot(hpsi).imag();
  }
  return b;
}

CoefficientSolution solve_coefficients(const CMatrix& s, const Eigen::VectorXd& b,
                                       double rel_tol) {
  const Eigen::MatrixXd normal = (s + s.transpose()).real();
  const auto sol = linalg::solve_symmetric_pinv(normal, b, rel_tol);
  return {sol.x, sol.residual};
}

std::vector<std::size_t> unitary_domain(const HamiltonianTerm& term, std::size_t d,
                                        std::size_t n) {
  if (d == 0 || d > n) {
    throw InvalidDomainError(fmt::format("domain size {} does not fit {} qubits", d, n));
  }
  if (term.domain.size() == d) return term.domain;
  return centered_window(term.support, d, n);
}

BasisMode resolve_basis_mode(BasisMode mode, const StateVector& initial,
                             std::span<const HamiltonianTerm> terms) {
  if (mode != BasisMode::automatic) return mode;
  const bool real = initial.is_real(1e-14) &&
                    std::all_of(terms.begin(), terms.end(), [](const HamiltonianTerm& t) {
                      return t.pauli.is_real(1e-14);
                    });
  return real ? BasisMode::odd_y : BasisMode::full;
}

std::pair<ScaledState, StepReport> trotter_step(const ScaledState& state,
                                                const HamiltonianTerm& term,
                                                const QnuteConfig& cfg) {
  const std::size_t n = state.state.num_qubits();
  cfg.validate(n);
  check_term(term, n);
  const BasisMode mode = resolve_basis_mode(cfg.basis_mode, state.state, {&term, 1});
  const PreparedTerm prepared = prepare(term, mode, n, cfg);
  return step_prepared(state, prepared, cfg);
}

Trajectory evolve(const ScaledState& initial, std::span<const HamiltonianTerm> terms,
                  const QnuteConfig& cfg) {
  const std::size_t n = initial.state.num_qubits();
  cfg.validate(n);
  for (const auto& t : terms) check_term(t, n);
  const BasisMode mode = resolve_basis_mode(cfg.basis_mode, initial.state, terms);

  std::vector<PreparedTerm> prepared;
  prepared.reserve(terms.size());
  std::size_t per_step_measurements = 0;
  for (const auto& t : terms) {
    prepared.push_back(prepare(t, mode, n, cfg));
    per_step_measurements += prepared.back().basis.size() * prepared.back().basis.size();
  }

  Trajectory traj;
  traj.terms_per_step = terms.size();
  traj.delta_t = cfg.delta_t;
  traj.measurement_count = cfg.num_steps * per_step_measurements;
  traj.states.reserve(cfg.num_steps + 1);
  traj.reports.reserve(cfg.num_steps * terms.size());
  traj.states.push_back(initial);

  ScaledState current = initial;
  for (std::size_t step = 0; step < cfg.num_steps; ++step) {
    for (const auto& p : prepared) {
      auto [next, report] = step_prepared(current, p, cfg);
      current = std::move(next);
      traj.reports.push_back(std::move(report));
    }
    traj.states.push_back(current);
  }
  return traj;
}

}  // namespace qnute
