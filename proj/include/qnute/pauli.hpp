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

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qnute {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/** Largest register for which dense 2^n x 2^n matrices are materialised. */
inline constexpr std::size_t kMaxDenseQubits = 14;

/** Coefficients with modulus below this are dropped on canonicalisation. */
inline constexpr double kDropTolerance = 1e-14;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

/**
 * Tensor product of single-qubit Pauli symbols.
 *
 * Qubit 0 is the leftmost tensor factor and therefore the most significant
 * bit of a computational basis index: basis state |k> has qubit q in state
 * (k >> (n - 1 - q)) & 1. Every construction in the library follows this
 * ordering, so `A (x) B` places A on the low-numbered qubits.
 */
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<Pauli> symbols);

  static PauliString identity(std::size_t n);
  /** Parses a symbol sequence such as "IXYZ". */
  static PauliString parse(std::string_view text);

  std::size_t size() const { return symbols_.size(); }
  Pauli operator[](std::size_t q) const { return symbols_[q]; }
  std::span<const Pauli> symbols() const { return symbols_; }

  /** Qubits carrying a non-identity symbol, ascending. */
  std::vector<std::size_t> support() const;
  bool is_identity() const;
  std::size_t count(Pauli p) const;

  /** Bits flipped by the string (X and Y positions). */
  std::uint64_t x_mask() const;
  /** Bits contributing a sign (Y and Z positions). */
  std::uint64_t z_mask() const;

  /** Concatenation: this (x) other. */
  PauliString tensor(const PauliString& other) const;

  std::string str() const;

  auto operator<=>(const PauliString&) const = default;
  bool operator==(const PauliString&) const = default;

 private:
  std::vector<Pauli> symbols_;
};

struct StringProduct {
  Complex phase;
  PauliString string;
};

/** p * q == phase * r, with phase in {1, -1, i, -i}. */
StringProduct multiply_strings(const PauliString& p, const PauliString& q);

struct PauliTerm {
  Complex coeff;
  PauliString string;
};

/**
 * Complex linear combination of n-qubit Pauli strings.
 *
 * Always canonical: terms sorted lexicographically by symbol sequence
 * (I < X < Y < Z), duplicates merged and negligible coefficients dropped.
 */
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(std::size_t num_qubits);
  PauliSum(std::size_t num_qubits, std::vector<PauliTerm> terms);

  static PauliSum from_string(const PauliString& s, Complex coeff = 1.0);
  static PauliSum identity(std::size_t n, Complex coeff = 1.0);

  /**
   * Reads the textual notation produced by str(): one "(re+imi) SYMBOLS"
   * term per line or separated by " + ". Blank input yields an empty sum
   * over `num_qubits` qubits.
   */
  static PauliSum parse(std::string_view text, std::size_t num_qubits = 0);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<PauliTerm>& terms() const { return terms_; }

  /** Coefficient of `s`, zero when absent. */
  Complex coefficient(const PauliString& s) const;

  PauliSum adjoint() const;
  bool is_hermitian(double tol = 0.0) const;

  /** True when the dense matrix of the sum has only real entries. */
  bool is_real(double tol = 0.0) const;

  /** Largest coefficient-wise distance to `other` (absent terms count as 0). */
  double max_abs_difference(const PauliSum& other) const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(Complex scalar);

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, Complex s) { return a *= s; }
  friend PauliSum operator*(Complex s, PauliSum a) { return a *= s; }
  /** Operator product (matrix multiplication). */
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  std::string str() const;

  bool operator==(const PauliSum& other) const;

 private:
  void canonicalize();

  std::size_t num_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

/** The one-qubit ladder and projector matrices. */
enum class LadderOp {
  NW,  ///< [[1,0],[0,0]]
  SE,  ///< [[0,0],[0,1]]
  NE,  ///< [[0,1],[0,0]]
  SW,  ///< [[0,0],[1,0]]
};

PauliSum ladder_as_pauli(LadderOp op);

/** n-fold tensor power of a ladder operator; n == 0 gives the scalar 1. */
PauliSum ladder_power(LadderOp op, std::size_t n);

/** Kronecker product: the qubits of `a` precede those of `b`. */
PauliSum tensor(const PauliSum& a, const PauliSum& b);

/** Dense realisation; throws CapacityError for n > kMaxDenseQubits. */
CMatrix dense_matrix(const PauliSum& s, std::size_t n);
CMatrix dense_matrix(const PauliString& s);

/** Pauli coefficients via normalised Hilbert-Schmidt inner products. */
PauliSum decompose_dense(const CMatrix& m);

/** s|v> for a single string. */
CVector apply_string(const PauliString& s, const CVector& v);
/** op|v>. */
CVector apply_sum(const PauliSum& op, const CVector& v);

}  // namespace qnute
