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

#include "qnute/market.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

#include "qnute/errors.hpp"

namespace qnute::market {

namespace {

struct Leg {
  bool is_call;
  double strike;
  double weight;
};

// Every supported payoff as a weighted sum of vanilla calls and puts.
std::vector<Leg> legs(const OptionContract& c) {
  const auto& k = c.strikes();
  switch (c.kind()) {
    case OptionKind::call: return {{true, k[0], 1.0}};
    case OptionKind::put: return {{false, k[0], 1.0}};
    case OptionKind::bull_spread: return {{true, k[0], 1.0}, {true, k[1], -1.0}};
    case OptionKind::bear_spread: return {{false, k[1], 1.0}, {false, k[0], -1.0}};
    case OptionKind::straddle: return {{true, k[0], 1.0}, {false, k[0], 1.0}};
    case OptionKind::strangle: return {{false, k[0], 1.0}, {true, k[1], 1.0}};
    case OptionKind::butterfly:
      return {{true, k[0], 1.0}, {true, 0.5 * (k[0] + k[1]), -2.0}, {true, k[1], 1.0}};
  }
  return {};
}

std::size_t strike_count(OptionKind kind) {
  switch (kind) {
    case OptionKind::call:
    case OptionKind::put:
    case OptionKind::straddle: return 1;
    default: return 2;
  }
}

double vanilla_price(bool is_call, double strike, double x, double tau, const BSParams& p) {
  if (tau == 0.0) return is_call ? std::max(x - strike, 0.0) : std::max(strike - x, 0.0);
  const double discounted = strike * std::exp(-p.r * tau);
  if (x == 0.0) return is_call ? 0.0 : discounted;
  const double vol = p.sigma * std::sqrt(tau);
  double call = 0.0;
  if (vol == 0.0) {
    call = std::max(x - discounted, 0.0);
  } else {
    const double d1 = (std::log(x / strike) + (p.r + 0.5 * p.sigma * p.sigma) * tau) / vol;
    const double d2 = d1 - vol;
    call = x * normal_cdf(d1) - discounted * normal_cdf(d2);
  }
  // Put-call parity.
  return is_call ? call : call - x + discounted;
}

}  // namespace

std::string_view kind_name(OptionKind kind) {
  switch (kind) {
    case OptionKind::call: return "call";
    case OptionKind::put: return "put";
    case OptionKind::bull_spread: return "bull-spread";
    case OptionKind::bear_spread: return "bear-spread";
    case OptionKind::straddle: return "straddle";
    case OptionKind::strangle: return "strangle";
    case OptionKind::butterfly: return "butterfly";
  }
  return "?";
}

OptionContract::OptionContract(OptionKind kind, std::vector<double> strikes)
    : kind_(kind), strikes_(std::move(strikes)) {
  const std::size_t want = strike_count(kind_);
  if (strikes_.size() != want) {
    throw DomainError(fmt::format("contract {} takes {} strike(s), got {}", kind_name(kind_),
                                  want, strikes_.size()));
  }
  for (double k : strikes_) {
    if (!(k > 0.0) || !std::isfinite(k)) {
      throw DomainError(fmt::format("contract strike {} must be positive", k));
    }
  }
  if (want == 2 && !(strikes_[0] < strikes_[1])) {
    throw DomainError(fmt::format("contract strikes need K1 < K2, got {} and {}", strikes_[0],
                                  strikes_[1]));
  }
}

OptionContract OptionContract::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw DomainError(fmt::format("contract '{}' must look like kind:strike[,strike]", spec));
  }
  const std::string_view name = spec.substr(0, colon);
  OptionKind kind;
  if (name == "call") {
    kind = OptionKind::call;
  } else if (name == "put") {
    kind = OptionKind::put;
  } else if (name == "bull-spread" || name == "bull") {
    kind = OptionKind::bull_spread;
  } else if (name == "bear-spread" || name == "bear") {
    kind = OptionKind::bear_spread;
  } else if (name == "straddle") {
    kind = OptionKind::straddle;
  } else if (name == "strangle") {
    kind = OptionKind::strangle;
  } else if (name == "butterfly") {
    kind = OptionKind::butterfly;
  } else {
    throw DomainError(fmt::format("contract kind '{}' is not supported", name));
  }
  std::vector<double> strikes;
  std::string_view rest = spec.substr(colon + 1);
  if (rest.empty()) throw DomainError(fmt::format("contract '{}' has no strike", spec));
  while (true) {
    const auto comma = rest.find(',');
    const std::string token(rest.substr(0, comma));
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (token.empty() || end != token.c_str() + token.size()) {
      throw DomainError(fmt::format("contract strike '{}' is not a number", token));
    }
    strikes.push_back(value);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return OptionContract(kind, std::move(strikes));
}

std::string OptionContract::str() const {
  std::string out(kind_name(kind_));
  out += ':';
  for (std::size_t k = 0; k < strikes_.size(); ++k) {
    if (k > 0) out += ',';
    out += fmt::format("{:.12g}", strikes_[k]);
  }
  return out;
}

double OptionContract::payoff(double x) const {
  double v = 0.0;
  for (const auto& leg : legs(*this)) {
    v += leg.weight * (leg.is_call ? std::max(x - leg.strike, 0.0) : std::max(leg.strike - x, 0.0));
  }
  return v;
}

std::vector<double> payoff_samples(const OptionContract& contract, const Grid& grid) {
  std::vector<double> out(grid.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = contract.payoff(grid.x(k));
  return out;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double analytic_price(const OptionContract& contract, double x, double tau, const BSParams& p) {
  if (x < 0.0) throw DomainError(fmt::format("asset price {} is negative", x));
  if (tau < 0.0) throw DomainError(fmt::format("time to maturity {} is negative", tau));
  if (tau == 0.0) return contract.payoff(x);
  double v = 0.0;
  for (const auto& leg : legs(contract)) {
    v += leg.weight * vanilla_price(leg.is_call, leg.strike, x, tau, p);
  }
  return v;
}

std::string_view side_name(Side side) { return side == Side::left ? "left" : "right"; }

bool BoundaryCoeffs::degenerate(Side side) const {
  return side == Side::left ? (a0 == 0.0 && b0 == 0.0) : (aN == 0.0 && bN == 0.0);
}

BoundaryCoeffs boundary_coefficients(std::span<const double> payoff, const Grid& grid) {
  if (payoff.size() != grid.size()) {
    throw DimensionError(
        fmt::format("{} payoff samples on a grid of {} points", payoff.size(), grid.size()));
  }
  const double h = grid.spacing();
  const std::size_t last = payoff.size() - 1;
  BoundaryCoeffs c;
  c.x0 = grid.x0();
  c.xN = grid.xN();
  c.a0 = (payoff[1] - payoff[0]) / h;
  c.b0 = payoff[0] - c.a0 * c.x0;
  c.aN = (payoff[last] - payoff[last - 1]) / h;
  c.bN = payoff[last] - c.aN * c.xN;
  return c;
}

double boundary_value(const BoundaryCoeffs& coeffs, Side side, double tau, const BSParams& p) {
  const double decay = std::exp(-p.r * tau);
  return side == Side::left ? coeffs.a0 * coeffs.x0 + coeffs.b0 * decay
                            : coeffs.aN * coeffs.xN + coeffs.bN * decay;
}

Side preferred_side(OptionKind kind) {
  switch (kind) {
    case OptionKind::call:
    case OptionKind::bull_spread: return Side::right;
    default: return Side::left;
  }
}

Side select_side(OptionKind kind, const BoundaryCoeffs& coeffs) {
  const Side first = preferred_side(kind);
  const Side second = first == Side::left ? Side::right : Side::left;
  if (!coeffs.degenerate(first)) return first;
  if (!coeffs.degenerate(second)) return second;
  throw ProtocolFailureError(
      "rescaling protocol failed: a(0) = b(0) = 0 on both boundaries");
}

double rescale_factor(const StateVector& state, const BoundaryCoeffs& coeffs, Side side,
                      double tau, const BSParams& p) {
  if (coeffs.degenerate(Side::left) && coeffs.degenerate(Side::right)) {
    throw ProtocolFailureError(
        "rescaling protocol failed: a(0) = b(0) = 0 on both boundaries");
  }
  if (coeffs.degenerate(side)) {
    throw ProtocolFailureError(
        fmt::format("rescaling protocol failed: the {} boundary carries no data", side_name(side)));
  }
  const std::size_t index = side == Side::left ? 0 : state.dim() - 1;
  const double amplitude = std::abs(state[index]);
  if (amplitude < 1e-12) {
    throw DivisionDegeneracyError(fmt::format(
        "boundary amplitude {:.3g} at index {} is too small to rescale by", amplitude, index));
  }
  return boundary_value(coeffs, side, tau, p) / amplitude;
}

std::vector<HamiltonianTerm> black_scholes_terms(const Grid& grid, const BSParams& p,
                                                 const QnuteConfig& cfg) {
  const PauliSum generator = build_bs_pauli(grid, p, Boundary::linear);
  return split_terms(generator, cfg.term_strategy(grid.num_qubits()));
}

PriceCurve price_curve(const OptionContract& contract, const Grid& grid, const BSParams& p,
                       const QnuteConfig& cfg) {
  p.validate();
  cfg.validate(grid.num_qubits());
  const std::vector<double> payoff = payoff_samples(contract, grid);
  const BoundaryCoeffs coeffs = boundary_coefficients(payoff, grid);
  PriceCurve out;
  out.side = select_side(contract.kind(), coeffs);

  const ScaledState initial = encode_samples(payoff);
  const auto terms = black_scholes_terms(grid, p, cfg);
  out.basis_mode = resolve_basis_mode(cfg.basis_mode, initial.state, terms);
  out.trajectory = evolve(initial, terms, cfg);

  const double tau = static_cast<double>(cfg.num_steps) * cfg.delta_t;
  const ScaledState& final_state = out.trajectory.states.back();
  out.rescale = rescale_factor(final_state.state, coeffs, out.side, tau, p);
  out.prices = decode_nonnegative(ScaledState{final_state.state, out.rescale});
  return out;
}

}  // namespace qnute::market
