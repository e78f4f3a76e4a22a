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
#include <string>
#include <string_view>
#include <vector>

#include "qnute/grid_hamiltonian.hpp"
#include "qnute/qnute.hpp"
#include "qnute/statevector.hpp"

namespace qnute::market {

enum class OptionKind { call, put, bull_spread, bear_spread, straddle, strangle, butterfly };

std::string_view kind_name(OptionKind kind);

/**
 * A European contract. call, put and straddle take one strike K; the
 * spreads, the strangle and the butterfly take K1 < K2. The butterfly is
 * long the wings K1, K2 and short two calls at (K1 + K2) / 2, so its payoff
 * vanishes outside (K1, K2).
 */
class OptionContract {
 public:
  OptionContract(OptionKind kind, std::vector<double> strikes);

  /** "kind:K" or "kind:K1,K2", e.g. "call:75", "strangle:50,100". */
  static OptionContract parse(std::string_view spec);

  OptionKind kind() const { return kind_; }
  const std::vector<double>& strikes() const { return strikes_; }
  std::string str() const;

  double payoff(double x) const;

 private:
  OptionKind kind_;
  std::vector<double> strikes_;
};

/** Payoff sampled at every grid point. */
std::vector<double> payoff_samples(const OptionContract& contract, const Grid& grid);

/** Standard normal CDF. */
double normal_cdf(double x);

/**
 * Closed-form Black-Scholes price at asset price x and time to maturity
 * tau. Calls and puts use the usual d1/d2 formulas, the other kinds follow
 * by linearity. At x == 0 the limit is returned (call 0, put K e^{-r tau});
 * negative x throws DomainError.
 */
double analytic_price(const OptionContract& contract, double x, double tau, const BSParams& p);

enum class Side { left, right };

std::string_view side_name(Side side);

/** Linear fits u = a x + b through the two samples nearest each boundary. */
struct BoundaryCoeffs {
  double a0 = 0.0;
  double b0 = 0.0;
  double aN = 0.0;
  double bN = 0.0;
  double x0 = 0.0;
  double xN = 0.0;

  bool degenerate(Side side) const;
};

BoundaryCoeffs boundary_coefficients(std::span<const double> payoff, const Grid& grid);

/** a(0) x_b + b(0) e^{-r tau} on the chosen side. */
double boundary_value(const BoundaryCoeffs& coeffs, Side side, double tau, const BSParams& p);

/** call and bull spread price off the right edge, every other kind off the left. */
Side preferred_side(OptionKind kind);

/**
 * The preferred side, or the other one when the preferred edge carries no
 * data. Throws ProtocolFailureError when both are degenerate.
 */
Side select_side(OptionKind kind, const BoundaryCoeffs& coeffs);

/**
 * C* such that C* |amplitude at the boundary| equals the boundary value:
 * basis index 0 on the left, 2^n - 1 on the right.
 */
double rescale_factor(const StateVector& state, const BoundaryCoeffs& coeffs, Side side,
                      double tau, const BSParams& p);

/** The linear-boundary generator split into Trotter terms per `cfg`. */
std::vector<HamiltonianTerm> black_scholes_terms(const Grid& grid, const BSParams& p,
                                                 const QnuteConfig& cfg);

struct PriceCurve {
  std::vector<double> prices;
  Trajectory trajectory;
  Side side = Side::left;
  double rescale = 1.0;
  BasisMode basis_mode = BasisMode::full;
};

/**
 * End-to-end pricing: encode the payoff, evolve under the linear-boundary
 * generator for num_steps * delta_t years, rescale by C* at maturity and
 * read out the moduli of the amplitudes.
 */
PriceCurve price_curve(const OptionContract& contract, const Grid& grid, const BSParams& p,
                       const QnuteConfig& cfg);

}  // namespace qnute::market
