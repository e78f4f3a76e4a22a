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

#include "qnute/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <map>

#include <fmt/format.h>

#include "qnute/errors.hpp"

namespace qnute {

namespace {

constexpr Complex kI{0.0, 1.0};

// i^k for k mod 4.
Complex i_power(std::size_t k) {
  switch (k % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void require_dense_capacity(std::size_t n) {
  if (n > kMaxDenseQubits) {
    throw CapacityError(fmt::format(
        "dense representation of {} qubits exceeds the {}-qubit limit", n,
        kMaxDenseQubits));
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(std::string_view s, std::size_t& pos) {
  std::string buf(s.substr(pos));
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end == buf.c_str()) {
    throw DomainError(fmt::format("expected a number in '{}'", s));
  }
  pos += static_cast<std::size_t>(end - buf.c_str());
  return v;
}

// "(re+imi)", "(re)" or a bare real number.
Complex parse_coefficient(std::string_view s) {
  s = trim(s);
  if (s.empty()) throw DomainError("empty coefficient");
  if (s.front() != '(') {
    std::size_t pos = 0;
    const double re = parse_double(s, pos);
    if (pos != s.size()) throw DomainError(fmt::format("bad coefficient '{}'", s));
    return {re, 0.0};
  }
  if (s.back() != ')') throw DomainError(fmt::format("bad coefficient '{}'", s));
  std::string_view body = s.substr(1, s.size() - 2);
  std::size_t pos = 0;
  const double re = parse_double(body, pos);
  if (pos == body.size()) return {re, 0.0};
  const double im = parse_double(body, pos);
  if (pos + 1 != body.size() || body[pos] != 'i') {
    throw DomainError(fmt::format("bad coefficient '{}'", s));
  }
  return {re, im};
}

}  // namespace

char to_char(Pauli p) {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<std::size_t>(p)];
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default:
      throw DomainError(fmt::format("'{}' is not a Pauli symbol", c));
  }
}

PauliString::PauliString(std::vector<Pauli> symbols)
    : symbols_(std::move(symbols)) {
  if (symbols_.size() > 63) {
    throw CapacityError("Pauli strings are limited to 63 qubits");
  }
}

PauliString PauliString::identity(std::size_t n) {
  return PauliString(std::vector<Pauli>(n, Pauli::I));
}

PauliString PauliString::parse(std::string_view text) {
  text = trim(text);
  std::vector<Pauli> symbols;
  symbols.reserve(text.size());
  for (char c : text) symbols.push_back(pauli_from_char(c));
  return PauliString(std::move(symbols));
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < symbols_.size(); ++q) {
    if (symbols_[q] != Pauli::I) out.push_back(q);
  }
  return out;
}

bool PauliString::is_identity() const {
  return std::all_of(symbols_.begin(), symbols_.end(),
                     [](Pauli p) { return p == Pauli::I; });
}

std::size_t PauliString::count(Pauli p) const {
  return static_cast<std::size_t>(
      std::count(symbols_.begin(), symbols_.end(), p));
}

std::uint64_t PauliString::x_mask() const {
  const std::size_t n = symbols_.size();
  std::uint64_t mask = 0;
  for (std::size_t q = 0; q < n; ++q) {
    if (symbols_[q] == Pauli::X || symbols_[q] == Pauli::Y) {
      mask |= std::uint64_t{1} << (n - 1 - q);
    }
  }
  return mask;
}

std::uint64_t PauliString::z_mask() const {
  const std::size_t n = symbols_.size();
  std::uint64_t mask = 0;
  for (std::size_t q = 0; q < n; ++q) {
    if (symbols_[q] == Pauli::Z || symbols_[q] == Pauli::Y) {
      mask |= std::uint64_t{1} << (n - 1 - q);
    }
  }
  return mask;
}

PauliString PauliString::tensor(const PauliString& other) const {
  std::vector<Pauli> symbols = symbols_;
  symbols.insert(symbols.end(), other.symbols_.begin(), other.symbols_.end());
  return PauliString(std::move(symbols));
}

std::string PauliString::str() const {
  std::string out;
  out.reserve(symbols_.size());
  for (Pauli p : symbols_) out.push_back(to_char(p));
  return out;
}

StringProduct multiply_strings(const PauliString& p, const PauliString& q) {
  if (p.size() != q.size()) {
    throw DimensionError(fmt::format("cannot multiply strings of length {} and {}",
                                     p.size(), q.size()));
  }
  std::vector<Pauli> out(p.size());
  // Net power of i accumulated: +1 for cyclic pairs (XY, YZ, ZX), -1 otherwise.
  int quarter_turns = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const auto a = static_cast<int>(p[k]);
    const auto b = static_cast<int>(q[k]);
    out[k] = static_cast<Pauli>(a ^ b);
    if (a != 0 && b != 0 && a != b) {
      quarter_turns += ((b - a + 3) % 3 == 1) ? 1 : -1;
    }
  }
  return {i_power(static_cast<std::size_t>((quarter_turns % 4 + 4) % 4)),
          PauliString(std::move(out))};
}

PauliSum::PauliSum(std::size_t num_qubits) : num_qubits_(num_qubits) {}

PauliSum::PauliSum(std::size_t num_qubits, std::vector<PauliTerm> terms)
    : num_qubits_(num_qubits), terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.string.size() != num_qubits_) {
      throw DimensionError(fmt::format(
          "term {} has {} qubits, sum has {}", t.string.str(), t.string.size(),
          num_qubits_));
    }
  }
  canonicalize();
}

PauliSum PauliSum::from_string(const PauliString& s, Complex coeff) {
  return PauliSum(s.size(), {{coeff, s}});
}

PauliSum PauliSum::identity(std::size_t n, Complex coeff) {
  return from_string(PauliString::identity(n), coeff);
}

PauliSum PauliSum::parse(std::string_view text, std::size_t num_qubits) {
  std::vector<PauliTerm> terms;
  std::size_t n = num_qubits;
  bool have_n = num_qubits != 0;

  auto add_term = [&](std::string_view chunk) {
    chunk = trim(chunk);
    if (chunk.empty()) return;
    const auto split = chunk.find_last_of(" \t");
    if (split == std::string_view::npos) {
      throw DomainError(fmt::format("term '{}' lacks a coefficient", chunk));
    }
    const Complex coeff = parse_coefficient(chunk.substr(0, split));
    PauliString s = PauliString::parse(chunk.substr(split + 1));
    if (!have_n) {
      n = s.size();
      have_n = true;
    }
    terms.push_back({coeff, std::move(s)});
  };

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    std::size_t pos = 0;
    for (std::size_t plus; (plus = line.find(" + ", pos)) != std::string_view::npos;) {
      add_term(line.substr(pos, plus - pos));
      pos = plus + 3;
    }
    add_term(line.substr(pos));
    start = end + 1;
  }
  return PauliSum(n, std::move(terms));
}

Complex PauliSum::coefficient(const PauliString& s) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), s,
      [](const PauliTerm& t, const PauliString& key) { return t.string < key; });
  if (it != terms_.end() && it->string == s) return it->coeff;
  return {0.0, 0.0};
}

PauliSum PauliSum::adjoint() const {
  PauliSum out = *this;
  for (auto& t : out.terms_) t.coeff = std::conj(t.coeff);
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  return std::all_of(terms_.begin(), terms_.end(), [tol](const PauliTerm& t) {
    return std::abs(t.coeff.imag()) <= tol;
  });
}

bool PauliSum::is_real(double tol) const {
  // Strings are linearly independent, so the matrix is real iff every
  // coefficient times the string's own phase i^{#Y} is real.
  return std::all_of(terms_.begin(), terms_.end(), [tol](const PauliTerm& t) {
    return std::abs((t.coeff * i_power(t.string.count(Pauli::Y))).imag()) <= tol;
  });
}

double PauliSum::max_abs_difference(const PauliSum& other) const {
  const PauliSum diff = *this - other;
  double out = 0.0;
  for (const auto& t : diff.terms_) out = std::max(out, std::abs(t.coeff));
  return out;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.empty()) return *this;
  if (empty() && num_qubits_ == 0) num_qubits_ = other.num_qubits_;
  if (other.num_qubits_ != num_qubits_) {
    throw DimensionError(fmt::format("cannot add sums over {} and {} qubits",
                                     num_qubits_, other.num_qubits_));
  }
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  canonicalize();
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  return *this += other * Complex{-1.0, 0.0};
}

PauliSum& PauliSum::operator*=(Complex scalar) {
  for (auto& t : terms_) t.coeff *= scalar;
  canonicalize();
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.num_qubits_ != b.num_qubits_) {
    throw DimensionError(fmt::format("cannot multiply sums over {} and {} qubits",
                                     a.num_qubits_, b.num_qubits_));
  }
  std::map<PauliString, Complex> acc;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      auto [phase, s] = multiply_strings(ta.string, tb.string);
      acc[std::move(s)] += phase * ta.coeff * tb.coeff;
    }
  }
  std::vector<PauliTerm> terms;
  terms.reserve(acc.size());
  for (auto& [s, c] : acc) terms.push_back({c, s});
  return PauliSum(a.num_qubits_, std::move(terms));
}

std::string PauliSum::str() const {
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += '\n';
    out += fmt::format("({:.17g}{:+.17g}i) {}", t.coeff.real(), t.coeff.imag(),
                       t.string.str());
  }
  return out;
}

bool PauliSum::operator==(const PauliSum& other) const {
  if (num_qubits_ != other.num_qubits_ || terms_.size() != other.terms_.size()) {
    return false;
  }
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    if (terms_[k].string != other.terms_[k].string ||
        terms_[k].coeff != other.terms_[k].coeff) {
      return false;
    }
  }
  return true;
}

void PauliSum::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const PauliTerm& a, const PauliTerm& b) { return a.string < b.string; });
  std::vector<PauliTerm> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().string == t.string) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const PauliTerm& t) { return std::abs(t.coeff) < kDropTolerance; });
  terms_ = std::move(merged);
}

PauliSum ladder_as_pauli(LadderOp op) {
  switch (op) {
    case LadderOp::NW: return PauliSum(1, {{0.5, PauliString::parse("I")}, {0.5, PauliString::parse("Z")}});
    case LadderOp::SE: return PauliSum(1, {{0.5, PauliString::parse("I")}, {-0.5, PauliString::parse("Z")}});
    case LadderOp::NE: return PauliSum(1, {{0.5, PauliString::parse("X")}, {0.5 * kI, PauliString::parse("Y")}});
    case LadderOp::SW: return PauliSum(1, {{0.5, PauliString::parse("X")}, {-0.5 * kI, PauliString::parse("Y")}});
  }
  return PauliSum(1);
}

PauliSum ladder_power(LadderOp op, std::size_t n) {
  PauliSum out = PauliSum::identity(0);
  const PauliSum one = ladder_as_pauli(op);
  for (std::size_t k = 0; k < n; ++k) out = tensor(one, out);
  return out;
}

PauliSum tensor(const PauliSum& a, const PauliSum& b) {
  std::vector<PauliTerm> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      terms.push_back({ta.coeff * tb.coeff, ta.string.tensor(tb.string)});
    }
  }
  return PauliSum(a.num_qubits() + b.num_qubits(), std::move(terms));
}

CMatrix dense_matrix(const PauliSum& s, std::size_t n) {
  require_dense_capacity(n);
  if (!s.empty() && s.num_qubits() != n) {
    throw DimensionError(fmt::format("sum over {} qubits requested as {}-qubit matrix",
                                     s.num_qubits(), n));
  }
  const std::size_t dim = std::size_t{1} << n;
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : s.terms()) {
    const std::uint64_t x = t.string.x_mask();
    const std::uint64_t z = t.string.z_mask();
    const Complex base = t.coeff * i_power(t.string.count(Pauli::Y));
    for (std::uint64_t k = 0; k < dim; ++k) {
      const double sign = (std::popcount(k & z) & 1) ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(k ^ x), static_cast<Eigen::Index>(k)) += sign * base;
    }
  }
  return m;
}

CMatrix dense_matrix(const PauliString& s) {
  return dense_matrix(PauliSum::from_string(s), s.size());
}

PauliSum decompose_dense(const CMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0 ||
      !std::has_single_bit(static_cast<std::uint64_t>(m.rows()))) {
    throw DimensionError(fmt::format("{}x{} is not a square power-of-two matrix",
                                     m.rows(), m.cols()));
  }
  const auto dim = static_cast<std::uint64_t>(m.rows());
  const auto n = static_cast<std::size_t>(std::countr_zero(dim));
  require_dense_capacity(n);
  std::vector<PauliTerm> terms;
  std::vector<Pauli> symbols(n);
  const std::uint64_t count = std::uint64_t{1} << (2 * n);
  for (std::uint64_t j = 0; j < count; ++j) {
    for (std::size_t q = 0; q < n; ++q) {
      symbols[q] = static_cast<Pauli>((j >> (2 * (n - 1 - q))) & 3U);
    }
    PauliString s(symbols);
    const std::uint64_t x = s.x_mask();
    const std::uint64_t z = s.z_mask();
    // Tr(P M) = sum_b phase(b) M(b, b ^ x), where P|b> = phase(b)|b ^ x>.
    Complex trace{0.0, 0.0};
    for (std::uint64_t b = 0; b < dim; ++b) {
      const double sign = (std::popcount(b & z) & 1) ? -1.0 : 1.0;
      trace += sign * m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b ^ x));
    }
    trace *= i_power(s.count(Pauli::Y));
    terms.push_back({trace / static_cast<double>(dim), std::move(s)});
  }
  return PauliSum(n, std::move(terms));
}

CVector apply_string(const PauliString& s, const CVector& v) {
  const std::uint64_t dim = std::uint64_t{1} << s.size();
  if (static_cast<std::uint64_t>(v.size()) != dim) {
    throw DimensionError(fmt::format("string of length {} applied to vector of size {}",
                                     s.size(), v.size()));
  }
  const std::uint64_t x = s.x_mask();
  const std::uint64_t z = s.z_mask();
  const Complex base = i_power(s.count(Pauli::Y));
  CVector out(v.size());
  for (std::uint64_t k = 0; k < dim; ++k) {
    const double sign = (std::popcount(k & z) & 1) ? -1.0 : 1.0;
    out[static_cast<Eigen::Index>(k ^ x)] = sign * base * v[static_cast<Eigen::Index>(k)];
  }
  return out;
}

CVector apply_sum(const PauliSum& op, const CVector& v) {
  CVector out = CVector::Zero(v.size());
  if (op.empty()) return out;
  const std::uint64_t dim = std::uint64_t{1} << op.num_qubits();
  if (static_cast<std::uint64_t>(v.size()) != dim) {
    throw DimensionError(fmt::format("{}-qubit operator applied to vector of size {}",
                                     op.num_qubits(), v.size()));
  }
  for (const auto& t : op.terms()) {
    const std::uint64_t x = t.string.x_mask();
    const std::uint64_t z = t.string.z_mask();
    const Complex base = t.coeff * i_power(t.string.count(Pauli::Y));
    for (std::uint64_t k = 0; k < dim; ++k) {
      const double sign = (std::popcount(k & z) & 1) ? -1.0 : 1.0;
      out[static_cast<Eigen::Index>(k ^ x)] += sign * base * v[static_cast<Eigen::Index>(k)];
    }
  }
  return out;
}

}  // namespace qnute
