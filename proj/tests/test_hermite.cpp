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
#include "oscitool/errors.hpp"
#include "oscitool/hermite.hpp"
#include "oscitool/multi_index.hpp"
#include "oscitool/quadrature.hpp"

using namespace osc;

TEST_CASE("simplex enumeration is graded and counted by binomials") {
  for (int d : {1, 2, 3}) {
    for (int N : {0, 3, 7}) {
      const auto idx = SimplexIndex::get(d, N);
      CHECK(idx->size() == simplex_size(d, N));
      for (std::size_t i = 1; i < idx->size(); ++i) CHECK((*idx)[i - 1].order() <= (*idx)[i].order());
      for (std::size_t i = 0; i < idx->size(); ++i) CHECK(idx->find((*idx)[i]) == i);
      CHECK(idx->order_begin(N + 1) == idx->size());
    }
  }
  const auto idx = SimplexIndex::get(2, 2);
  CHECK((*idx)[1] == MultiIndex{1, 0});
  CHECK((*idx)[2] == MultiIndex{0, 1});
  CHECK(idx->find(MultiIndex{3, 0}) == idx->size());
  CHECK(simplex_size(3, 20) == 1771);
}

TEST_CASE("coefficient access outside the truncation") {
  HermiteCoeffs c(2, 3);
  c.set(MultiIndex{1, 2}, Complex(2.0, -1.0));
  CHECK(c.at(MultiIndex{1, 2}) == Complex(2.0, -1.0));
  CHECK(c.at(MultiIndex{4, 0}) == Complex(0.0));
  CHECK_THROWS_AS(c.set(MultiIndex{4, 0}, 1.0), DomainError);
  const HermiteCoeffs up = c.retruncated(6);
  CHECK(up.at(MultiIndex{1, 2}) == Complex(2.0, -1.0));
  CHECK(up.l2_norm() == doctest::Approx(c.l2_norm()));
}

TEST_CASE("hermite functions match the polynomial oracle") {
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(33, -6.0, 6.0);
  const Eigen::MatrixXd h = hermite_values(20, x);
  double worst = 0.0;
  for (int n = 0; n <= 20; ++n) {
    for (Eigen::Index i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(h(n, i) - oracle::hermite_function(n, x[i])));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("hermite recurrence survives large order and argument") {
  Eigen::VectorXd x(3);
  x << 0.0, 30.0, 60.0;
  const Eigen::MatrixXd h = hermite_values(2000, x);
  CHECK(h.allFinite());
  // h_n(0) for even n has magnitude ~ (pi^2 n / 2)^{-1/4}
  CHECK(std::abs(h(2000, 0)) == doctest::Approx(std::pow(std::numbers::pi * std::numbers::pi * 1000.0, -0.25)).epsilon(1e-3));
  CHECK(std::abs(h(0, 2)) < 1e-300);
}

TEST_CASE("gauss-hermite rule integrates polynomials exactly") {
  for (int n : {1, 5, 20, 64}) {
    const QuadratureRule r = gauss_hermite_rule(n);
    for (int k = 0; k <= std::min(2 * n - 1, 30); k += 2) {
      const double exact = std::tgamma(0.5 * (k + 1));
      const double got = (r.weights.array() * r.nodes.array().pow(k)).sum();
      CHECK(got == doctest::Approx(exact).epsilon(1e-12));
    }
  }
}

TEST_CASE("gauss-laguerre moments") {
  for (double a : {0.0, 0.5, 3.0, 40.0}) {
    const QuadratureRule r = gauss_laguerre_rule(32, a);
    CHECK(r.weights.sum() == doctest::Approx(1.0).epsilon(1e-13));
    for (int k = 1; k <= 10; ++k) {
      const double exact = std::exp(std::lgamma(k + a + 1.0) - std::lgamma(a + 1.0));
      const double got = (r.weights.array() * r.nodes.array().pow(k)).sum();
      CHECK(got == doctest::Approx(exact).epsilon(1e-11));
    }
  }
  // tiny tail weights keep their relative accuracy
  const QuadratureRule r = gauss_laguerre_rule(64, 0.0);
  CHECK((r.weights.array() * (r.nodes.array() * 0.5).exp()).sum() == doctest::Approx(2.0).epsilon(1e-10));
  CHECK_THROWS_AS(gauss_laguerre_rule(8, -1.0), DomainError);
}

TEST_CASE("gauss-legendre rule") {
  const QuadratureRule r = gauss_legendre_rule(10, 0.0, 2.0);
  CHECK(r.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK((r.weights.array() * r.nodes.array().pow(19)).sum() == doctest::Approx(std::pow(2.0, 20) / 20.0).epsilon(1e-12));
}

TEST_CASE("analyze and synthesize round trip") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int d : {1, 2, 3}) {
    const int N = d == 3 ? 6 : 12;
    HermiteCoeffs c(d, N);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = Complex(g(rng), g(rng));
    const GridFunction f = synthesize(c, default_hermite_grid(d, N));
    const HermiteCoeffs back = analyze(f, N);
    CHECK((back.values() - c.values()).norm() < 1e-11 * c.l2_norm());
    std::vector<double> pt(static_cast<std::size_t>(d), 0.37);
    Complex direct = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      double prod = 1.0;
      for (int j = 0; j < d; ++j) prod *= oracle::hermite_function(c.alpha(i)[j], pt[static_cast<std::size_t>(j)]);
      direct += c[i] * prod;
    }
    CHECK(std::abs(synthesize_at(c, pt) - direct) < 1e-12 * c.l2_norm());
  }
}

TEST_CASE("analyze rejects grids that alias") {
  GridFunction f = sample([](std::span<const double> x) { return Complex(std::exp(-x[0] * x[0])); }, {hermite_axis(5)});
  CHECK_THROWS_AS(analyze(f, 8), DomainError);
  f.values.resize(3);
  CHECK_THROWS_AS(f.validate(), DomainError);
}

TEST_CASE("gaussian analyzes to even coefficients only") {
  const HermiteCoeffs c = analyze([](std::span<const double> x) { return Complex(std::exp(-x[0] * x[0])); }, 1, 16);
  for (int n = 1; n <= 16; n += 2) CHECK(std::abs(c[static_cast<std::size_t>(n)]) < 1e-14);
  // <e^{-x^2}, h_0> = pi^{-1/4} sqrt(2 pi / 3)
  CHECK(c[0].real() == doctest::Approx(std::pow(std::numbers::pi, -0.25) * std::sqrt(2.0 * std::numbers::pi / 3.0)));
}
