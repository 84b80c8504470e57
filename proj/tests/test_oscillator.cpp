// Copyright 2026 The oscitool Authors.
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oscitool/errors.hpp"
#include "oscitool/frft.hpp"
#include "oscitool/oscillator.hpp"

using namespace osc;

namespace {

PropagatorSpec spec1(Complex zeta, double r, Complex c = 0.0) {
  PropagatorSpec s;
  s.zeta = zeta;
  s.rho = Eigen::VectorXcd::Constant(1, 1.0);
  s.c = c;
  s.r = r;
  return s;
}

HermiteCoeffs sequence(int N, const std::function<double(double)>& f) {
  HermiteCoeffs c(1, N);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f(static_cast<double>(i));
  return c;
}

}  // namespace

TEST_CASE("oscillator eigenvalues") {
  PropagatorSpec s;
  s.rho = Eigen::Vector2cd(1.0, 2.0);
  s.c = Complex(0.5, 0.0);
  s.r = 1.0;
  // 2 <alpha, rho> + sum rho + c
  CHECK(eigenvalue(s, MultiIndex{1, 2}) == Complex(2.0 * (1 + 4) + 3.0 + 0.5));
  s.r = 2.0;
  CHECK(eigenvalue(s, MultiIndex{0, 0}) == Complex(3.5 * 3.5));
  s.r = 0.5;
  CHECK(std::abs(eigenvalue(s, MultiIndex{1, 0}) - std::sqrt(Complex(5.5))) < 1e-15);
  s.r = 0.0;
  CHECK(eigenvalue(s, MultiIndex{4, 4}) == Complex(1.0));
}

TEST_CASE("zero eigenvalue base with negative power is refused") {
  PropagatorSpec s = spec1(0.0, -1.0, -3.0);
  CHECK_FALSE(s.avoids_zero_base(4));
  CHECK_THROWS_AS(eigenvalue(s, MultiIndex{1}), DomainError);
  CHECK_NOTHROW(eigenvalue(s, MultiIndex{2}));
  CHECK(spec1(0.0, -1.0, 0.5).avoids_zero_base(10));
}

TEST_CASE("power acts on h_alpha by the eigenvalue") {
  const HermiteCoeffs c = HermiteCoeffs::unit(1, 8, MultiIndex{3});
  const HermiteCoeffs p = apply_power(c, spec1(0.0, 1.0, 2.0));
  CHECK(p[3] == Complex(9.0));
  // H h computed on a grid by finite differences: (x^2 - d^2) h_3 = 7 h_3
  const double x = 0.8;
  const double h = 1e-3;
  const std::vector<double> p0{x}, pm{x - h}, pp{x + h};
  const double lap = (synthesize_at(c, pp) - 2.0 * synthesize_at(c, p0) + synthesize_at(c, pm)).real() / (h * h);
  CHECK(x * x * synthesize_at(c, p0).real() - lap == doctest::Approx(7.0 * synthesize_at(c, p0).real()).epsilon(1e-5));
}

TEST_CASE("unitary propagator preserves l2 and inverts") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  HermiteCoeffs c(2, 10);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = Complex(g(rng), g(rng));
  PropagatorSpec s;
  s.rho = Eigen::Vector2cd(0.7, 1.3);
  s.c = 0.2;
  s.r = 1.5;
  s.zeta = Complex(0.0, 0.9);
  const HermiteCoeffs u = apply_propagator(c, s);
  CHECK(u.l2_norm() == doctest::Approx(c.l2_norm()).epsilon(1e-14));
  s.zeta = -s.zeta;
  CHECK((apply_propagator(u, s).values() - c.values()).norm() < 1e-13 * c.l2_norm());
}

TEST_CASE("propagator at -i pi/4 is a shifted fractional Fourier transform") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int d : {1, 2, 3}) {
    PropagatorSpec s;
    s.rho = Eigen::VectorXcd(d);
    for (int j = 0; j < d; ++j) s.rho[j] = Complex(u(rng), u(rng));
    s.c = Complex(u(rng), u(rng));
    s.zeta = Complex(0.0, -0.25 * std::numbers::pi);
    const FracOrder rho(s.rho);
    const Complex shift = std::exp(s.zeta * (rho.sum() + s.c));
    for (const MultiIndex& a : SimplexIndex::get(d, 12)->list()) {
      const Complex lhs = std::exp(s.zeta * eigenvalue(s, a));
      const Complex rhs = shift * frft_multiplier(rho, a);
      CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(rhs));
    }
  }
}

TEST_CASE("overflow is reported, not hidden") {
  const HermiteCoeffs c = sequence(400, [](double) { return 1.0; });
  const HermiteCoeffs u = apply_propagator(c, spec1(1.0, 1.0));
  const auto bad = overflow_indices(u);
  CHECK_FALSE(bad.empty());
  CHECK(bad.front() > 300);
  CHECK(std::isfinite(std::abs(u[300])));
}

TEST_CASE("growth classifier recognizes the model laws") {
  const int N = 200;
  SUBCASE("schwartz witness") {
    const auto k = classify_growth(witness_sequence(WitnessKind::kSchwartzLog2, 1, N));
    CHECK(k.tag == GrowthTag::kSchwartz);
    CHECK(k.accepted);
  }
  SUBCASE("exponential decay is H_s with s = 1/2") {
    const auto k = classify_growth(sequence(N, [](double n) { return std::exp(-n); }));
    CHECK(k.tag == GrowthTag::kHs);
    CHECK(k.parameter == doctest::Approx(0.5).epsilon(0.02));
  }
  SUBCASE("beurling sequence recovers s") {
    const auto k = classify_growth(witness_sequence(WitnessKind::kBeurling, 1, N, 2.0));
    CHECK(k.tag == GrowthTag::kHs);
    CHECK(k.parameter == doctest::Approx(2.0).epsilon(0.05));
  }
  SUBCASE("polynomial growth is tempered with its degree") {
    const auto k = classify_growth(sequence(N, [](double n) { return std::pow(1.0 + n * n, 1.5); }));
    CHECK(k.tag == GrowthTag::kTempered);
    CHECK(k.parameter == doctest::Approx(3.0).epsilon(0.02));
  }
  SUBCASE("factorial decay is flat") {
    const auto k = classify_growth(sequence(N, [](double n) { return std::exp(-0.5 * std::lgamma(n + 1.0)); }));
    CHECK(k.tag == GrowthTag::kFlat);
    CHECK(k.parameter == doctest::Approx(1.0).epsilon(0.05));
  }
  SUBCASE("degenerate inputs") {
    CHECK_THROWS_AS(classify_growth(HermiteCoeffs(1, N)), DomainError);
    CHECK_THROWS_AS(classify_growth(sequence(3, [](double) { return 1.0; })), DomainError);
  }
}

TEST_CASE("witness escapes polynomial bounds after a real-time step") {
  const HermiteCoeffs w = witness_sequence(WitnessKind::kSchwartzLog2, 1, 200);
  for (int k = 0; k <= 10; ++k) CHECK_FALSE(escapes_polynomial_bound(w, -k));
  const HermiteCoeffs u = apply_propagator(w, spec1(1.0, 1.0));
  for (int k = 0; k <= 10; ++k) CHECK(escapes_polynomial_bound(u, k));
  CHECK(classify_growth(u).tag == GrowthTag::kBeyond);
  CHECK(classify_growth(apply_propagator(w, spec1(Complex(0.0, 2.3), 1.0))).tag == GrowthTag::kSchwartz);
}

TEST_CASE("continuity decision table") {
  const FunctionSpace sch{SpaceKind::kSchwartz, 0.0};
  CHECK(classify_continuity(spec1(Complex(0.0, 1.0), 1.0), sch) == Continuity::kHomeomorphism);
  CHECK(classify_continuity(spec1(1.0, 1.0), sch) == Continuity::kDiscontinuous);
  CHECK(classify_continuity(spec1(1.0, 1.0), {SpaceKind::kH0s, 0.5}) == Continuity::kHomeomorphism);
  CHECK(classify_continuity(spec1(1.0, 1.0), {SpaceKind::kHs, 0.5}) == Continuity::kDiscontinuous);
  CHECK(classify_continuity(spec1(1.0, 1.0), {SpaceKind::kHs, 0.4}) == Continuity::kHomeomorphism);
  CHECK(classify_continuity(spec1(-1.0, 1.0), sch) == Continuity::kNotCovered);
  CHECK(classify_continuity(spec1(1.0, 0.0), sch) == Continuity::kHomeomorphism);
  CHECK(to_string(Continuity::kNotCovered).size() > 0);
}
