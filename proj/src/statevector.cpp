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

#include "qnute/statevector.hpp"

#include <bit>
#include <cmath>

#include <fmt/format.h>

#include "qnute/errors.hpp"

namespace qnute {

StateVector::StateVector(std::size_t n) : num_qubits_(n) {
  if (n > 30) throw CapacityError(fmt::format("{} qubits is too many for a dense state", n));
  amplitudes_ = CVector::Zero(Eigen::Index{1} << n);
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  const auto dim = static_cast<std::uint64_t>(amplitudes_.size());
  if (dim == 0 || !std::has_single_bit(dim)) {
    throw DimensionError(fmt::format("{} amplitudes is not a power of two", dim));
  }
  num_qubits_ = static_cast<std::size_t>(std::countr_zero(dim));
}

StateVector StateVector::basis_state(std::size_t n, std::size_t index) {
  StateVector s(n);
  if (index >= s.dim()) {
    throw DimensionError(fmt::format("basis index {} out of range for {} qubits", index, n));
  }
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[static_cast<Eigen::Index>(index)] = 1.0;
  return s;
}

double StateVector::normalize() {
  const double nrm = norm();
  if (nrm > 0.0) amplitudes_ /= nrm;
  return nrm;
}

bool StateVector::is_real(double tol) const {
  return amplitudes_.imag().cwiseAbs().maxCoeff() <= tol;
}

ScaledState encode_samples(std::span<const double> values) {
  const auto dim = static_cast<std::uint64_t>(values.size());
  if (dim == 0 || !std::has_single_bit(dim)) {
    throw DimensionError(fmt::format("{} samples is not a power of two", dim));
  }
  CVector amps(static_cast<Eigen::Index>(dim));
  double sq = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) {
      throw DomainError(fmt::format("sample {} is not finite", k));
    }
    amps[static_cast<Eigen::Index>(k)] = values[k];
    sq += values[k] * values[k];
  }
  if (sq == 0.0) throw DegenerateInputError("cannot encode an all-zero sample vector");
  const double scale = std::sqrt(sq);
  amps /= scale;
  return {StateVector(std::move(amps)), scale};
}

Complex expectation(const StateVector& state, const PauliSum& op) {
  if (op.empty()) return {0.0, 0.0};
  if (op.num_qubits() != state.num_qubits()) {
    throw DimensionError(fmt::format("{}-qubit operator on {}-qubit state",
                                     op.num_qubits(), state.num_qubits()));
  }
  return state.amplitudes().dot(apply_sum(op, state.amplitudes()));
}

StateVector apply_pauli_rotation(const StateVector& state, const PauliString& s,
                                 double angle) {
  if (s.size() != state.num_qubits()) {
    throw DimensionError(fmt::format("{}-qubit string on {}-qubit state", s.size(),
                                     state.num_qubits()));
  }
  const Complex minus_i_sin{0.0, -std::sin(angle)};
  CVector out = std::cos(angle) * state.amplitudes() +
                minus_i_sin * apply_string(s, state.amplitudes());
  return StateVector(std::move(out));
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError(fmt::format("fidelity between {}- and {}-qubit states",
                                     a.num_qubits(), b.num_qubits()));
  }
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

std::vector<double> decode_nonnegative(const ScaledState& s) {
  std::vector<double> out(s.state.dim());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = s.scale * std::abs(s.state[k]);
  return out;
}

}  // namespace qnute
