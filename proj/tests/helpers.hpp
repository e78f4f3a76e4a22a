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
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qnute/pauli.hpp"
#include "qnute/statevector.hpp"

// Independent dense reference helpers shared by the unit tests. Nothing here
// goes through the Pauli-string bit tricks of the library.
namespace qnute::testing {

inline CMatrix pauli_matrix(Pauli p) {
  CMatrix m(2, 2);
  const Complex i(0.0, 1.0);
  switch (p) {
    case Pauli::I: m << 1.0, 0.0, 0.0, 1.0; break;
    case Pauli::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case Pauli::Y: m << 0.0, -i, i, 0.0; break;
    case Pauli::Z: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/** Kronecker product of 2x2 factors, qubit 0 leftmost. */
inline CMatrix kron_string(const PauliString& s) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (std::size_t q = 0; q < s.size(); ++q) out = kron(out, pauli_matrix(s[q]));
  return out;
}

inline CMatrix kron_sum(const PauliSum& sum, std::size_t n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  CMatrix out = CMatrix::Zero(dim, dim);
  for (const auto& t : sum.terms()) out += t.coeff * kron_string(t.string);
  return out;
}

inline PauliString random_string(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> pick(0, 3);
  std::vector<Pauli> symbols(n);
  for (auto& p : symbols) p = static_cast<Pauli>(pick(rng));
  return PauliString(symbols);
}

inline PauliSum random_sum(std::mt19937_64& rng, std::size_t n, std::size_t terms,
                           bool complex_coeffs = true) {
  std::normal_distribution<double> g;
  PauliSum out(n);
  for (std::size_t k = 0; k < terms; ++k) {
    const Complex c(g(rng), complex_coeffs ? g(rng) : 0.0);
    out += PauliSum::from_string(random_string(rng, n), c);
  }
  return out;
}

inline CVector random_vector(std::mt19937_64& rng, std::size_t dim, bool real = false) {
  std::normal_distribution<double> g;
  CVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = Complex(g(rng), real ? 0.0 : g(rng));
  return v;
}

inline StateVector random_state(std::mt19937_64& rng, std::size_t n, bool real = false) {
  StateVector s(random_vector(rng, std::size_t{1} << n, real));
  s.normalize();
  return s;
}

/** exp(a) by summing the Taylor series to machine precision, no scaling. */
inline CMatrix taylor_exp(const CMatrix& a, int terms = 80) {
  CMatrix out = CMatrix::Identity(a.rows(), a.cols());
  CMatrix term = out;
  for (int k = 1; k < terms; ++k) {
    term = term * a / static_cast<double>(k);
    out += term;
  }
  return out;
}

}  // namespace qnute::testing
