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

#include "qnute/pauli.hpp"

namespace qnute {

/** Dense n-qubit statevector; qubit 0 is the most significant index bit. */
class StateVector {
 public:
  /** |0...0> on n qubits. */
  explicit StateVector(std::size_t n = 0);
  /** Wraps amplitudes as given; the length must be a power of two. */
  explicit StateVector(CVector amplitudes);

  static StateVector basis_state(std::size_t n, std::size_t index);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex operator[](std::size_t k) const { return amplitudes_[static_cast<Eigen::Index>(k)]; }

  double norm() const { return amplitudes_.norm(); }
  /** Rescales to unit norm and returns the previous norm. */
  double normalize();

  bool is_real(double tol = 0.0) const;

 private:
  std::size_t num_qubits_ = 0;
  CVector amplitudes_;
};

/**
 * A normalised state together with the accumulated positive scale, so that
 * `scale * state` is the unnormalised vector being tracked.
 */
struct ScaledState {
  StateVector state;
  double scale = 1.0;
};

/** Amplitude encoding: state = v / |v|, scale = |v|. */
ScaledState encode_samples(std::span<const double> values);

/** <psi|op|psi>. */
Complex expectation(const StateVector& state, const PauliSum& op);

/** exp(-i angle s)|psi> = cos(angle)|psi> - i sin(angle) s|psi>. */
StateVector apply_pauli_rotation(const StateVector& state, const PauliString& s,
                                 double angle);

/** |<a|b>|^2. */
double fidelity(const StateVector& a, const StateVector& b);

/**
 * scale * |amplitude_k| for each basis index. Only meaningful for solutions
 * known to be real and non-negative; signs and phases are discarded.
 */
std::vector<double> decode_nonnegative(const ScaledState& s);

}  // namespace qnute
