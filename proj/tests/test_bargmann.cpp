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

#include "oracles.hpp"
#include "oscitool/bargmann.hpp"
#include "oscitool/errors.hpp"
#include "oscitool/frft.hpp"

using namespace osc;

namespace {

PhasePoint pt1(double x, double xi) { return {Eigen::VectorXd::Constant(1, x), Eigen::VectorXd::Constant(1, xi)}; }

HermiteCoeffs mix() {
  HermiteCoeffs c(1, 6);
  c[0] = 1.0;
  c[1] = Complex(0.0, -0.4);
  c[3] = 0.7;
  c[6] = Complex(0.2, 0.1);
  return c;
}

}  // namespace

TEST_CASE("bargmann transform of h_alpha is a normalized monomial") {
  const FockSeries F = bargmann_from_coeffs(HermiteCoeffs::unit(2, 5, MultiIndex{2, 1}));
  const std::vector<Complex> z{Complex(0.3, -1.1), Complex(-0.8, 0.5)};
  const Complex expect = z[0] * z[0] * z[1] / std::sqrt(2.0);
  CHECK(std::abs(F(z) - expect) < 1e-14);
}

TEST_CASE("bargmann integral kernel matches the series") {
  const HermiteCoeffs c = mix();
  const GridFunction f = synthesize(c, {kernel_axis(60)});
  const FockSeries F = bargmann_from_coeffs(c);
  for (Complex z : {Complex(0.0), Complex(1.2, -0.7), Complex(-2.0, 1.5)}) {
    const std::vector<Complex> zz{z};
    CHECK(std::abs(bargmann_kernel(f, zz) - F(zz)) < 1e-10 * std::max(1.0, std::abs(F(zz))));
  }
}

TEST_CASE("gaussian STFT agrees with direct quadrature") {
  const HermiteCoeffs c = mix();
  auto f = [&](double y) {
    const std::vector<double> p{y};
    return synthesize_at(c, p);
  };
  for (auto [x, xi] : {std::pair{0.0, 0.0}, std::pair{1.3, -0.4}, std::pair{-2.1, 2.5}, std::pair{0.5, 4.0}}) {
    const Complex direct = oracle::stft_direct(f, x, xi);
    CHECK(std::abs(stft_gaussian(c, pt1(x, xi)) - direct) < 1e-10);
    const GridFunction g = synthesize(c, {kernel_axis(80)});
    CHECK(std::abs(stft_gaussian(g, pt1(x, xi)) - direct) < 1e-8);
  }
}

TEST_CASE("STFT of h_0 is a gaussian bump") {
  // |V h_0(x, xi)| = (2 pi)^{-1/2} exp(-(x^2 + xi^2) / 4)
  for (auto [x, xi] : {std::pair{0.0, 0.0}, std::pair{1.0, 2.0}, std::pair{-3.0, 0.5}}) {
    CHECK(std::abs(stft_gaussian(HermiteCoeffs::unit(1, 0, MultiIndex{0}), pt1(x, xi))) ==
          doctest::Approx(std::exp(-0.25 * (x * x + xi * xi)) / std::sqrt(2.0 * std::numbers::pi)));
  }
}

TEST_CASE("FrFT rotates the STFT modulus") {
  const HermiteCoeffs c = mix();
  for (double rho : {0.3, 1.0, 1.7, -0.9}) {
    const HermiteCoeffs g = spectral_frft(c, FracOrder::uniform(1, rho));
    const std::vector<double> r{rho};
    for (auto [x, xi] : {std::pair{0.4, -1.0}, std::pair{2.0, 1.0}}) {
      const PhasePoint p = pt1(x, xi);
      CHECK(std::abs(stft_gaussian(g, p)) == doctest::Approx(std::abs(stft_gaussian(c, phase_rotation(p, r)))).epsilon(1e-12));
    }
  }
}

TEST_CASE("phase rotation is a rotation") {
  const PhasePoint p = pt1(1.0, 0.0);
  const std::vector<double> r{1.0};
  const PhasePoint q = phase_rotation(p, r);
  CHECK(q.x[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(q.xi[0] == doctest::Approx(1.0));
  CHECK(gaussian_window(std::vector<double>{0.0}) == doctest::Approx(std::pow(std::numbers::pi, -0.25)));
}
