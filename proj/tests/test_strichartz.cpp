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

#include "oracles.hpp"
#include "oscitool/errors.hpp"
#include "oscitool/strichartz.hpp"

using namespace osc;

namespace {

PropagatorSpec oscillator1() {
  PropagatorSpec h;
  h.rho = Eigen::VectorXcd::Constant(1, 1.0);
  h.r = 1.0;
  return h;
}

HermiteCoeffs three_modes() {
  HermiteCoeffs u(1, 6);
  u[0] = 1.0;
  u[2] = Complex(0.0, 0.5);
  u[5] = -0.3;
  return u;
}

}  // namespace

TEST_CASE("time grids integrate polynomials") {
  const TimeGrid u = TimeGrid::uniform(2.0, 8);
  CHECK(u.size() == 9);
  CHECK(u.weights.sum() == doctest::Approx(2.0));
  const double sing[] = {0.0, 1.0};
  const TimeGrid g = TimeGrid::graded(2.0, sing);
  CHECK(g.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK((g.weights.array() * g.nodes.array().pow(5)).sum() == doctest::Approx(64.0 / 6.0).epsilon(1e-13));
  // |t - 1|^{-1/2} is integrable; the graded mesh recovers 2 (sqrt 1 + sqrt 1)
  CHECK((g.weights.array() * (g.nodes.array() - 1.0).abs().rsqrt()).sum() == doctest::Approx(4.0).epsilon(1e-5));
}

TEST_CASE("homogeneous evolution is the spectral multiplier") {
  const HermiteCoeffs u = three_modes();
  const TimeSlices s = evolve_E(u, TimeGrid::uniform(1.0, 4), oscillator1());
  for (Eigen::Index k = 0; k < s.grid.size(); ++k) {
    const double t = s.grid.nodes[k];
    CHECK(std::abs(s.states[static_cast<std::size_t>(k)][5] - u[5] * std::exp(Complex(0.0, -11.0 * t))) < 1e-15);
  }
}

TEST_CASE("Duhamel integral of a constant source has a closed form") {
  const int a = 3;
  const HermiteCoeffs u = HermiteCoeffs::unit(1, 6, MultiIndex{a});
  const TimeGrid g = TimeGrid::uniform(1.3, 40);
  const DuhamelResult s = duhamel_S(sample_source([&](double) { return u; }, g), oscillator1(), DuhamelVariant::kS1);
  const double lam = 2.0 * a + 1.0;
  for (Eigen::Index k = 0; k < g.size(); ++k) {
    const double t = g.nodes[k];
    const Complex exact = (1.0 - std::exp(Complex(0.0, -t * lam))) / Complex(0.0, lam);
    CHECK(std::abs(s.slices.states[static_cast<std::size_t>(k)][a] - exact) < 1e-14);
  }
  CHECK(s.refinement_gap < 1e-12);
  CHECK_FALSE(s.too_coarse());
  // S2 vanishes when lambda T is a full period
  const TimeGrid p = TimeGrid::uniform(2.0 * std::numbers::pi / lam, 10);
  const DuhamelResult s2 = duhamel_S(sample_source([&](double) { return u; }, p), oscillator1(), DuhamelVariant::kS2);
  CHECK(s2.slices.states[3].l2_norm() < 1e-14);
}

TEST_CASE("Duhamel residual is second order") {
  const HermiteCoeffs u = three_modes();
  auto F = [&](double t) {
    HermiteCoeffs f = u;
    f.values() *= std::cos(3.0 * t) + Complex(0.0, 1.0) * t * t;
    return f;
  };
  double prev = duhamel_residual(u, F, oscillator1(), 2.0, 20);
  for (int K : {40, 80}) {
    const double r = duhamel_residual(u, F, oscillator1(), 2.0, K);
    CHECK(std::log2(prev / r) > 1.8);
    prev = r;
  }
}

TEST_CASE("S2 factors through the adjoint") {
  const HermiteCoeffs u = three_modes();
  auto F = [&](double t) {
    HermiteCoeffs f = u;
    f.values() *= std::sin(2.0 * t) + 1.0;
    return f;
  };
  const TimeSlices src = sample_source(F, TimeGrid::graded(2.0, {}, 6, 0, 6));
  const TimeSlices ee = evolve_E(adjoint_E(src, oscillator1()), src.grid, oscillator1());
  const TimeSlices s2 = duhamel_S(src, oscillator1(), DuhamelVariant::kS2).slices;
  for (std::size_t k = 0; k < s2.states.size(); ++k) CHECK((ee.states[k].values() - s2.states[k].values()).norm() < 1e-13);
}

TEST_CASE("time norms") {
  const Trajectory c{TimeGrid::uniform(2.0, 10), Eigen::VectorXd::Constant(11, 3.0)};
  CHECK(time_norm(c, 3.0, false) == doctest::Approx(3.0 * std::cbrt(2.0)));
  CHECK(time_norm(c, 3.0, true) == doctest::Approx(3.0 * std::cbrt(2.0)).epsilon(1e-6));
  CHECK(time_norm(c, kInf, false) == doctest::Approx(3.0));
  const double sing[] = {0.0};
  const TimeGrid g = TimeGrid::graded(1.0, sing);
  Trajectory s{g, Eigen::VectorXd(g.size())};
  for (Eigen::Index k = 0; k < g.size(); ++k) s.values[k] = std::pow(std::sin(0.5 * std::numbers::pi * g.nodes[k]), -0.5);
  // (int_0^1 sin(pi t / 2)^{-3/4} dt)^{2/3} by adaptive Simpson away from 0 plus the leading term near 0
  const double eps = 1e-6;
  const double head = std::pow(0.5 * std::numbers::pi, -0.75) * 4.0 * std::pow(eps, 0.25);
  const double body = oracle::simpson([](double t) { return std::pow(std::sin(0.5 * std::numbers::pi * t), -0.75); }, eps, 1.0, 1e-12);
  CHECK(time_norm(s, 1.5, false) == doctest::Approx(std::pow(head + body, 2.0 / 3.0)).epsilon(1e-6));
  // the weak norm never exceeds the strong one
  CHECK(time_norm(s, 1.5, true) <= time_norm(s, 1.5, false) * (1.0 + 1e-12));
}

TEST_CASE("HLS operator and admissibility") {
  const Trajectory t = hls_apply([](double) { return 1.0; }, 2.0, HlsVariant::kFull, HlsKernel::kSin, TimeGrid::uniform(1.0, 4));
  const double ref = oracle::simpson([](double s) { return std::pow(std::sin(s), -0.5); }, 1e-10, 1.0, 1e-12) +
                     2.0 * std::sqrt(1e-10);
  CHECK(t.values[0] == doctest::Approx(ref).epsilon(1e-6));
  CHECK_FALSE(hls_violation(2.0, 2.0, 2.0).has_value());
  CHECK(hls_violation(2.0, 1.0, 2.0).has_value());
  CHECK(hls_violation(1.0, 2.0, 2.0).has_value());  // boundary with p0 = 1 must be strict
  CHECK(hls_violation(2.0, 2.0, 0.5).has_value());
  const double b0 = hls_bound_estimate(2.0, 2.0, 2.0, 4.0, HlsVariant::kFull, HlsKernel::kSin, 0);
  const double b1 = hls_bound_estimate(2.0, 2.0, 2.0, 4.0, HlsVariant::kFull, HlsKernel::kSin, 1);
  CHECK(std::abs(b1 / b0 - 1.0) < 0.05);
  CHECK_THROWS_AS(hls_bound_estimate(2.0, 1.0, 2.0, 4.0, HlsVariant::kFull, HlsKernel::kSin, 0), DomainError);
}

TEST_CASE("Strichartz exponent gates name the failing inequality") {
  StrichartzExponents e;
  e.p = kInf;
  e.q = 1.0;
  auto v = strichartz_violation(StrichartzEstimate::kDuhamel, 1, e);
  REQUIRE(v.has_value());
  CHECK(v->find("d(1/q - 1/p) < 1") != std::string::npos);
  e = {4.0, 2.0, 2.0, 4.0};
  CHECK_FALSE(strichartz_violation(StrichartzEstimate::kDuhamel, 1, e).has_value());
  e = {2.0, 4.0, 2.0, 2.0};
  CHECK(strichartz_violation(StrichartzEstimate::kDuhamel, 1, e).has_value());
  e = {4.0, 2.0, 1.0, 4.0};
  CHECK_FALSE(strichartz_violation(StrichartzEstimate::kWeakType, 1, e).has_value());
  e = {4.0, 2.0, 1.0, 3.0};
  CHECK(strichartz_violation(StrichartzEstimate::kWeakType, 1, e).has_value());
}

TEST_CASE("Strichartz ratios are finite and refinement stable") {
  StrichartzConfig cfg;
  cfg.hamiltonian = oscillator1();
  cfg.exponents = {4.0, 2.0, 2.0, 4.0};
  const HermiteCoeffs h0 = HermiteCoeffs::unit(1, 8, MultiIndex{0});
  const StrichartzReport r = verify_strichartz(cfg, h0);
  CHECK(r.admissible);
  CHECK(std::isfinite(r.ratio));
  CHECK(r.ratio > 0.0);
  CHECK(strichartz_refinement_change(cfg, h0) < 0.05);
  cfg.exponents = {kInf, 1.0, 2.0, 2.0};
  const StrichartzReport bad = verify_strichartz(cfg, h0);
  CHECK_FALSE(bad.admissible);
  CHECK(bad.violation.rfind("inadmissible exponents", 0) == 0);
  // p = q: unitary evolution keeps the M^{p,p} norm and the weak norm is exact
  cfg.estimate = StrichartzEstimate::kWeakType;
  cfg.exponents = {4.0, 4.0, 1.0, kInf};
  for (double T : {1.0, 2.0}) {
    cfg.T = T;
    CHECK(verify_strichartz(cfg, h0).ratio == doctest::Approx(2.0).epsilon(1e-3));
  }
}

TEST_CASE("Strichartz sweep is deterministic") {
  StrichartzConfig cfg;
  cfg.hamiltonian = oscillator1();
  cfg.exponents = {4.0, 2.0, 2.0, 4.0};
  cfg.intervals = 16;
  cfg.lattice_points = 33;
  const StrichartzSweep a = sweep_strichartz(cfg, 7);
  const StrichartzSweep b = sweep_strichartz(cfg, 7);
  CHECK(a.reports.size() == 29);
  CHECK(a.max_ratio == b.max_ratio);
  CHECK(std::isfinite(a.max_ratio));
}
