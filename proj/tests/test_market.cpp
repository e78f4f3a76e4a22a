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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "qnute/errors.hpp"
#include "qnute/market.hpp"

using namespace qnute;
using namespace qnute::market;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Discounted expectation of the payoff under the terminal lognormal law,
// composite Simpson in z = log-return in standard units.
double quadrature_price(const OptionContract& c, double x, double tau, const BSParams& p) {
  const double vol = p.sigma * std::sqrt(tau);
  const double mu = (p.r - 0.5 * p.sigma * p.sigma) * tau;
  const int panels = 20000;
  const double lo = -12.0;
  const double hi = 12.0;
  const double step = (hi - lo) / panels;
  double sum = 0.0;
  for (int k = 0; k <= panels; ++k) {
    const double z = lo + step * k;
    const double density = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
    const double f = c.payoff(x * std::exp(mu + vol * z)) * density;
    const double w = (k == 0 || k == panels) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    sum += w * f;
  }
  return std::exp(-p.r * tau) * sum * step / 3.0;
}

}  // namespace

TEST_CASE("contract parsing", "[market]") {
  const auto call = OptionContract::parse("call:75");
  CHECK(call.kind() == OptionKind::call);
  CHECK(call.strikes() == std::vector<double>{75.0});
  CHECK(call.str() == "call:75");
  const auto strangle = OptionContract::parse("strangle:50,100");
  CHECK(strangle.kind() == OptionKind::strangle);
  CHECK(strangle.strikes() == std::vector<double>{50.0, 100.0});
  CHECK(OptionContract::parse("bull:50,100").kind() == OptionKind::bull_spread);
  CHECK(OptionContract::parse("bear-spread:50,100").kind() == OptionKind::bear_spread);

  CHECK_THROWS_AS(OptionContract::parse("call:"), DomainError);
  CHECK_THROWS_AS(OptionContract::parse("call"), DomainError);
  CHECK_THROWS_AS(OptionContract::parse("swap:75"), DomainError);
  CHECK_THROWS_AS(OptionContract::parse("call:abc"), DomainError);
  CHECK_THROWS_AS(OptionContract::parse("call:50,100"), DomainError);
  CHECK_THROWS_AS(OptionContract::parse("strangle:100,50"), DomainError);
  CHECK_THROWS_AS(OptionContract::parse("put:-5"), DomainError);
}

TEST_CASE("payoffs", "[market]") {
  CHECK(OptionContract::parse("call:75").payoff(100.0) == 25.0);
  CHECK(OptionContract::parse("call:75").payoff(50.0) == 0.0);
  CHECK(OptionContract::parse("put:75").payoff(50.0) == 25.0);
  CHECK(OptionContract::parse("straddle:75").payoff(75.0) == 0.0);
  CHECK(OptionContract::parse("straddle:75").payoff(95.0) == 20.0);
  CHECK(OptionContract::parse("bull:50,100").payoff(150.0) == 50.0);
  CHECK(OptionContract::parse("bear:50,100").payoff(0.0) == 50.0);
  CHECK(OptionContract::parse("bear:50,100").payoff(150.0) == 0.0);
  CHECK(OptionContract::parse("strangle:50,100").payoff(75.0) == 0.0);
  CHECK(OptionContract::parse("strangle:50,100").payoff(20.0) == 30.0);
  const auto fly = OptionContract::parse("butterfly:50,100");
  CHECK(fly.payoff(75.0) == 25.0);
  CHECK(fly.payoff(60.0) == 10.0);
  CHECK(fly.payoff(40.0) == 0.0);
  CHECK(fly.payoff(120.0) == 0.0);
}

TEST_CASE("closed-form prices", "[market]") {
  const BSParams p;
  const auto call = OptionContract::parse("call:75");
  const auto put = OptionContract::parse("put:75");
  for (double x : {10.0, 60.0, 75.0, 90.0, 140.0}) {
    CHECK(analytic_price(call, x, 0.0, p) == call.payoff(x));
    for (double tau : {0.1, 1.0, 3.0}) {
      CHECK_THAT(analytic_price(call, x, tau, p) - analytic_price(put, x, tau, p),
                 WithinAbs(x - 75.0 * std::exp(-p.r * tau), 1e-10));
    }
  }
  CHECK_THAT(analytic_price(call, 75.0, 3.0, p),
             WithinRel(quadrature_price(call, 75.0, 3.0, p), 1e-7));
  for (const char* spec : {"bull:50,100", "strangle:50,100", "straddle:75", "butterfly:50,100"}) {
    const auto c = OptionContract::parse(spec);
    CHECK_THAT(analytic_price(c, 80.0, 2.0, p), WithinAbs(quadrature_price(c, 80.0, 2.0, p), 1e-6));
  }

  CHECK(analytic_price(call, 0.0, 3.0, p) == 0.0);
  CHECK_THAT(analytic_price(put, 0.0, 3.0, p), WithinAbs(75.0 * std::exp(-0.12), 1e-12));
  CHECK_THROWS_AS(analytic_price(call, -1.0, 3.0, p), DomainError);
  CHECK_THROWS_AS(analytic_price(call, 10.0, -1.0, p), DomainError);
}

TEST_CASE("normal CDF", "[market]") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK_THAT(normal_cdf(1.96), WithinAbs(0.9750021048517795, 1e-14));
  CHECK_THAT(normal_cdf(-1.0) + normal_cdf(1.0), WithinAbs(1.0, 1e-15));
}

TEST_CASE("boundary fits", "[market]") {
  for (std::size_t n : {2u, 3u, 4u, 5u}) {
    const Grid g(0.0, 150.0, n);
    if (g.x(1) >= 75.0) continue;
    const auto c = boundary_coefficients(payoff_samples(OptionContract::parse("call:75"), g), g);
    CHECK(c.a0 == 0.0);
    CHECK(c.b0 == 0.0);
    CHECK(c.degenerate(Side::left));
  }
  const Grid g4(0.0, 150.0, 4);
  const auto call = boundary_coefficients(payoff_samples(OptionContract::parse("call:75"), g4), g4);
  CHECK_THAT(call.aN, WithinAbs(1.0, 1e-12));
  CHECK_THAT(call.bN, WithinAbs(-75.0, 1e-12));
  const auto put = boundary_coefficients(payoff_samples(OptionContract::parse("put:75"), g4), g4);
  CHECK_THAT(put.a0, WithinAbs(-1.0, 1e-12));
  CHECK_THAT(put.b0, WithinAbs(75.0, 1e-12));
  CHECK_THROWS_AS(boundary_coefficients(std::vector<double>(3, 1.0), g4), DimensionError);
}

TEST_CASE("boundary values", "[market]") {
  const BSParams p;
  const Grid g(0.0, 150.0, 4);
  const auto put = boundary_coefficients(payoff_samples(OptionContract::parse("put:75"), g), g);
  CHECK_THAT(boundary_value(put, Side::left, 0.0, p), WithinAbs(75.0, 1e-12));
  CHECK_THAT(boundary_value(put, Side::left, 3.0, p), WithinAbs(75.0 * std::exp(-0.12), 1e-12));
  CHECK(boundary_value(put, Side::right, 3.0, p) == 0.0);
  const auto call = boundary_coefficients(payoff_samples(OptionContract::parse("call:75"), g), g);
  CHECK_THAT(boundary_value(call, Side::right, 0.0, p), WithinAbs(75.0, 1e-12));
}

TEST_CASE("side selection", "[market]") {
  const Grid g(0.0, 150.0, 4);
  const auto coeffs = [&](const char* spec) {
    return boundary_coefficients(payoff_samples(OptionContract::parse(spec), g), g);
  };
  CHECK(select_side(OptionKind::call, coeffs("call:75")) == Side::right);
  CHECK(select_side(OptionKind::put, coeffs("put:75")) == Side::left);
  CHECK(select_side(OptionKind::strangle, coeffs("strangle:50,100")) == Side::left);
  CHECK(select_side(OptionKind::bull_spread, coeffs("bull:50,100")) == Side::right);
  CHECK(select_side(OptionKind::bear_spread, coeffs("bear:50,100")) == Side::left);
  CHECK(select_side(OptionKind::straddle, coeffs("straddle:75")) == Side::left);
  CHECK_THROWS_AS(select_side(OptionKind::butterfly, coeffs("butterfly:50,100")),
                  ProtocolFailureError);
}

TEST_CASE("rescale factor", "[market]") {
  const BSParams p;
  const Grid g(0.0, 150.0, 3);
  const auto put = OptionContract::parse("put:75");
  const auto samples = payoff_samples(put, g);
  const auto encoded = encode_samples(samples);
  const auto coeffs = boundary_coefficients(samples, g);
  CHECK_THAT(rescale_factor(encoded.state, coeffs, Side::left, 0.0, p),
             WithinRel(encoded.scale, 1e-14));

  const auto fly = payoff_samples(OptionContract::parse("butterfly:50,100"), g);
  CHECK_THROWS_AS(rescale_factor(encode_samples(fly).state, boundary_coefficients(fly, g),
                                 Side::left, 1.0, p),
                  ProtocolFailureError);
  CHECK_THROWS_AS(rescale_factor(encoded.state, coeffs, Side::right, 1.0, p),
                  ProtocolFailureError);

  CVector v = CVector::Zero(8);
  v[3] = 1.0;
  CHECK_THROWS_AS(rescale_factor(StateVector(v), coeffs, Side::left, 1.0, p),
                  DivisionDegeneracyError);
}

TEST_CASE("pricing with a frozen market returns the payoff", "[market]") {
  const BSParams frozen{0.0, 0.0};
  const Grid g(0.0, 150.0, 3);
  QnuteConfig cfg;
  cfg.num_steps = 50;
  for (const char* spec : {"call:75", "put:75", "strangle:50,100"}) {
    const auto c = OptionContract::parse(spec);
    const auto curve = price_curve(c, g, frozen, cfg);
    const auto payoff = payoff_samples(c, g);
    for (std::size_t k = 0; k < payoff.size(); ++k) {
      CHECK_THAT(curve.prices[k], WithinAbs(payoff[k], 1e-9));
    }
  }
}

TEST_CASE("zero steps returns the payoff", "[market]") {
  const Grid g(0.0, 150.0, 4);
  QnuteConfig cfg;
  cfg.num_steps = 0;
  const auto c = OptionContract::parse("call:75");
  const auto curve = price_curve(c, g, BSParams{}, cfg);
  const auto payoff = payoff_samples(c, g);
  CHECK(curve.side == Side::right);
  for (std::size_t k = 0; k < payoff.size(); ++k) {
    CHECK_THAT(curve.prices[k], WithinAbs(payoff[k], 1e-10));
  }
}

TEST_CASE("small registers under-resolve the strike", "[market]") {
  const BSParams p;
  QnuteConfig cfg;
  const auto c = OptionContract::parse("call:75");
  double worst2 = 0.0;
  const Grid g2(0.0, 150.0, 2);
  const auto curve2 = price_curve(c, g2, p, cfg);
  for (std::size_t k = 0; k < g2.size(); ++k) {
    worst2 = std::max(worst2, std::abs(curve2.prices[k] - analytic_price(c, g2.x(k), 3.0, p)));
  }
  double worst5 = 0.0;
  const Grid g5(0.0, 150.0, 5);
  const auto curve5 = price_curve(c, g5, p, cfg);
  for (std::size_t k = 0; k < g5.size(); ++k) {
    worst5 = std::max(worst5, std::abs(curve5.prices[k] - analytic_price(c, g5.x(k), 3.0, p)));
  }
  CHECK(worst2 > worst5);
}
