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

#include "qnute/grid_hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <fmt/format.h>

#include "qnute/errors.hpp"

namespace qnute {

Grid::Grid(double x0, double xN, std::size_t n) : x0_(x0), xN_(xN), n_(n) {
  if (n < 1 || n > 30) throw DomainError(fmt::format("grid.n = {} must be in [1, 30]", n));
  if (!(x0 >= 0.0) || !(xN > x0) || !std::isfinite(xN)) {
    throw DomainError(fmt::format("grid bounds [{}, {}] need xN > x0 >= 0", x0, xN));
  }
  h_ = (xN_ - x0_) / static_cast<double>(size() - 1);
}

double Grid::x(std::size_t k) const {
  // The last point is the literal right endpoint.
  if (k + 1 == size()) return xN_;
  return x0_ + static_cast<double>(k) * h_;
}

std::vector<double> Grid::points() const {
  std::vector<double> out(size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = x(k);
  return out;
}

void BSParams::validate() const {
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError(fmt::format("market.r = {} must be >= 0", r));
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw DomainError(fmt::format("market.sigma = {} must be >= 0", sigma));
  }
}

Eigen::MatrixXd TridiagonalOperator::dense() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    m(k, k) = gamma[static_cast<std::size_t>(k)];
    if (k > 0) m(k, k - 1) = alpha[static_cast<std::size_t>(k - 1)];
    if (k + 1 < n) m(k, k + 1) = beta[static_cast<std::size_t>(k)];
  }
  return m;
}

std::vector<double> TridiagonalOperator::apply(std::span<const double> u) const {
  if (u.size() != size()) {
    throw DimensionError(fmt::format("operator of size {} applied to {} samples", size(), u.size()));
  }
  std::vector<double> out(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    double v = gamma[k] * u[k];
    if (k > 0) v += alpha[k - 1] * u[k - 1];
    if (k + 1 < u.size()) v += beta[k] * u[k + 1];
    out[k] = v;
  }
  return out;
}

TridiagonalOperator bs_coefficients(const Grid& grid, const BSParams& p) {
  p.validate();
  const std::size_t size = grid.size();
  const double h = grid.spacing();
  TridiagonalOperator t;
  t.gamma.resize(size);
  t.alpha.resize(size - 1);
  t.beta.resize(size - 1);
  for (std::size_t k = 0; k < size; ++k) {
    const double x = grid.x(k);
    const double diffusion = p.sigma * p.sigma * x * x / (2.0 * h * h);
    const double drift = p.r * x / (2.0 * h);
    const double alpha = diffusion - drift;
    const double beta = diffusion + drift;
    t.gamma[k] = -p.r - alpha - beta;
    if (k > 0) t.alpha[k - 1] = alpha;
    if (k + 1 < size) t.beta[k] = beta;
  }
  return t;
}

TridiagonalOperator apply_linear_bc(TridiagonalOperator t, const Grid& grid, const BSParams& p) {
  if (t.boundary == Boundary::linear) return t;
  if (t.size() != grid.size()) {
    throw DimensionError(fmt::format("operator of size {} on grid of size {}", t.size(), grid.size()));
  }
  const double h = grid.spacing();
  const double x0 = grid.x0();
  const double xN = grid.xN();
  const std::size_t last = t.size() - 1;
  t.gamma[0] = -p.r - p.r * x0 / h;
  t.beta[0] = p.r * x0 / h;
  t.alpha[last - 1] = -p.r * xN / h;
  t.gamma[last] = -p.r + p.r * xN / h;
  t.boundary = Boundary::linear;
  return t;
}

namespace {

PauliSum identity_on(std::size_t n) { return PauliSum::identity(n); }

}  // namespace

PauliSum chi_matrix(std::size_t n) {
  if (n < 1) throw UnsupportedSizeError("chi_matrix needs n >= 1");
  PauliSum chi = ladder_as_pauli(LadderOp::SE);
  for (std::size_t m = 2; m <= n; ++m) {
    chi = tensor(identity_on(1), chi) +
          tensor(ladder_as_pauli(LadderOp::SE), identity_on(m - 1)) *
              Complex{std::ldexp(1.0, static_cast<int>(m - 1)), 0.0};
  }
  return chi;
}

PauliSum chi_squared_matrix(std::size_t n) {
  if (n < 1) throw UnsupportedSizeError("chi_squared_matrix needs n >= 1");
  // (chi^(1))^2 = SE since SE is a projector.
  PauliSum chi = ladder_as_pauli(LadderOp::SE);
  PauliSum chi2 = chi;
  for (std::size_t m = 2; m <= n; ++m) {
    const double two_m = std::ldexp(1.0, static_cast<int>(m));
    const double four_m1 = std::ldexp(1.0, static_cast<int>(2 * (m - 1)));
    const PauliSum inner = chi * Complex{two_m, 0.0} + identity_on(m - 1) * Complex{four_m1, 0.0};
    chi2 = tensor(identity_on(1), chi2) + tensor(ladder_as_pauli(LadderOp::SE), inner);
    chi = tensor(identity_on(1), chi) +
          tensor(ladder_as_pauli(LadderOp::SE), identity_on(m - 1)) *
              Complex{std::ldexp(1.0, static_cast<int>(m - 1)), 0.0};
  }
  return chi2;
}

namespace {

// I (x) D^(n-1) + NE (x) SW^(n-1) + sign * SW (x) NE^(n-1).
PauliSum difference_recursion(PauliSum base, std::size_t n, double sign) {
  PauliSum d = std::move(base);
  for (std::size_t m = 2; m <= n; ++m) {
    d = tensor(identity_on(1), d) +
        tensor(ladder_as_pauli(LadderOp::NE), ladder_power(LadderOp::SW, m - 1)) +
        tensor(ladder_as_pauli(LadderOp::SW), ladder_power(LadderOp::NE, m - 1)) *
            Complex{sign, 0.0};
  }
  return d;
}

}  // namespace

PauliSum d1_matrix(std::size_t n) {
  if (n < 1) throw UnsupportedSizeError("d1_matrix needs n >= 1");
  return difference_recursion(ladder_as_pauli(LadderOp::NE) - ladder_as_pauli(LadderOp::SW), n,
                              -1.0);
}

PauliSum d2_matrix(std::size_t n) {
  if (n < 1) throw UnsupportedSizeError("d2_matrix needs n >= 1");
  const PauliSum base = identity_on(1) * Complex{-2.0, 0.0} +
                        PauliSum::from_string(PauliString::parse("X"));
  return difference_recursion(base, n, 1.0);
}

PauliSum build_bs_pauli(const Grid& grid, const BSParams& p, Boundary boundary) {
  p.validate();
  const std::size_t n = grid.num_qubits();
  if (boundary == Boundary::linear && n < 2) {
    throw UnsupportedSizeError("linear boundary conditions need at least 2 qubits");
  }
  const double h = grid.spacing();
  const double x0 = grid.x0();
  const PauliSum id = identity_on(n);

  // X = x0 I + h chi, X^2 = x0^2 I + 2 x0 h chi + h^2 chi^2.
  const PauliSum chi = chi_matrix(n);
  const PauliSum xs = id * Complex{x0, 0.0} + chi * Complex{h, 0.0};
  const PauliSum xs2 = id * Complex{x0 * x0, 0.0} + chi * Complex{2.0 * x0 * h, 0.0} +
                       chi_squared_matrix(n) * Complex{h * h, 0.0};

  PauliSum generator = xs2 * d2_matrix(n) * Complex{p.sigma * p.sigma / (2.0 * h * h), 0.0} +
                       xs * d1_matrix(n) * Complex{p.r / (2.0 * h), 0.0} -
                       id * Complex{p.r, 0.0};

  if (boundary == Boundary::linear) {
    const TridiagonalOperator central = bs_coefficients(grid, p);
    const TridiagonalOperator lin = apply_linear_bc(central, grid, p);
    const std::size_t last = central.size() - 1;
    const auto c = [](double v) { return Complex{v, 0.0}; };
    generator += ladder_power(LadderOp::NW, n) * c(lin.gamma[0] - central.gamma[0]);
    generator += tensor(ladder_power(LadderOp::NW, n - 1), ladder_as_pauli(LadderOp::NE)) *
                 c(lin.beta[0] - central.beta[0]);
    generator += tensor(ladder_power(LadderOp::SE, n - 1), ladder_as_pauli(LadderOp::SW)) *
                 c(lin.alpha[last - 1] - central.alpha[last - 1]);
    generator += ladder_power(LadderOp::SE, n) * c(lin.gamma[last] - central.gamma[last]);
  }
  return generator;
}

std::vector<std::size_t> centered_window(std::span<const std::size_t> support, std::size_t d,
                                         std::size_t n) {
  if (d == 0 || d > n) {
    throw InvalidDomainError(fmt::format("domain size {} does not fit {} qubits", d, n));
  }
  std::size_t start = 0;
  if (!support.empty()) {
    const auto lo = static_cast<long>(*std::min_element(support.begin(), support.end()));
    const auto hi = static_cast<long>(*std::max_element(support.begin(), support.end()));
    // floor((lo + hi - (d - 1)) / 2)
    const long twice = lo + hi - static_cast<long>(d - 1);
    long s = twice >= 0 ? twice / 2 : -((-twice + 1) / 2);
    s = std::clamp(s, 0L, static_cast<long>(n - d));
    start = static_cast<std::size_t>(s);
  }
  std::vector<std::size_t> out(d);
  for (std::size_t k = 0; k < d; ++k) out[k] = start + k;
  return out;
}

std::vector<HamiltonianTerm> split_terms(const PauliSum& hsum, const TermStrategy& strategy) {
  const std::size_t n = hsum.num_qubits();
  std::vector<std::size_t> all(n);
  for (std::size_t q = 0; q < n; ++q) all[q] = q;

  if (strategy.kind == TermStrategy::Kind::single) {
    HamiltonianTerm term{hsum, {}, all};
    std::set<std::size_t> sup;
    for (const auto& t : hsum.terms()) {
      for (auto q : t.string.support()) sup.insert(q);
    }
    term.support.assign(sup.begin(), sup.end());
    return {std::move(term)};
  }

  const std::size_t d = strategy.domain_size;
  if (d == 0 || d > n) {
    throw InvalidDomainError(fmt::format("domain size {} does not fit {} qubits", d, n));
  }
  if (strategy.stride == 0) throw InvalidDomainError("window stride must be positive");

  std::set<std::size_t> starts;
  for (std::size_t s = 0; s + d <= n; s += strategy.stride) starts.insert(s);
  starts.insert(n - d);

  std::map<std::size_t, std::vector<PauliTerm>> groups;
  for (const auto& t : hsum.terms()) {
    const auto sup = t.string.support();
    const std::size_t centred = centered_window(sup, d, n).front();
    const std::size_t lo = sup.empty() ? 0 : sup.front();
    const std::size_t hi = sup.empty() ? 0 : sup.back();
    const auto distance = [centred](std::size_t s) {
      return s > centred ? s - centred : centred - s;
    };
    std::size_t best = *starts.begin();
    bool best_contains = false;
    for (std::size_t s : starts) {
      const bool contains = s <= lo && hi < s + d;
      if ((contains && !best_contains) ||
          (contains == best_contains && distance(s) < distance(best))) {
        best = s;
        best_contains = contains;
      }
    }
    groups[best].push_back(t);
  }

  std::vector<HamiltonianTerm> out;
  for (auto& [start, terms] : groups) {
    HamiltonianTerm term;
    std::set<std::size_t> sup;
    for (const auto& t : terms) {
      for (auto q : t.string.support()) sup.insert(q);
    }
    term.pauli = PauliSum(n, std::move(terms));
    term.support.assign(sup.begin(), sup.end());
    term.domain.resize(d);
    for (std::size_t k = 0; k < d; ++k) term.domain[k] = start + k;
    out.push_back(std::move(term));
  }
  return out;
}

}  // namespace qnute
