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

#include "oscitool/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "oscitool/errors.hpp"

namespace osc {

namespace {

// Orthonormal Laguerre polynomials at x under a common power-of-two scale:
// p_n(x), p_n'(x) scaled by 2^-exponent, sum_{k<n} p_k(x)^2 by 2^-2 exponent.
struct LaguerreEval {
  double p = 0.0;
  double dp = 0.0;
  double sum = 0.0;
  int exponent = 0;
};

LaguerreEval laguerre_eval(int n, double a, double x) {
  LaguerreEval e;
  double p0 = 0.0;
  double p1 = 1.0;
  double d0 = 0.0;
  double d1 = 0.0;
  double b_prev = 0.0;
  for (int k = 0; k < n; ++k) {
    e.sum += p1 * p1;
    const double ak = 2.0 * k + a + 1.0;
    const double bk = std::sqrt((k + 1.0) * (k + 1.0 + a));
    const double p2 = ((x - ak) * p1 - b_prev * p0) / bk;
    const double d2 = (p1 + (x - ak) * d1 - b_prev * d0) / bk;
    p0 = p1;
    p1 = p2;
    d0 = d1;
    d1 = d2;
    b_prev = bk;
    if (std::abs(p1) > 0x1p300 || std::abs(d1) > 0x1p300) {
      p0 = std::ldexp(p0, -300);
      p1 = std::ldexp(p1, -300);
      d0 = std::ldexp(d0, -300);
      d1 = std::ldexp(d1, -300);
      e.sum = std::ldexp(e.sum, -600);
      e.exponent += 300;
    }
  }
  e.p = p1;
  e.dp = d1;
  return e;
}

}  // namespace

QuadratureRule gauss_laguerre_rule(int n, double a) {
  if (n < 1) throw DomainError("Gauss-Laguerre rule needs n >= 1");
  if (!(a > -1.0)) throw DomainError("Gauss-Laguerre parameter must exceed -1");
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + a + 1.0;
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(k * (k + a));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("Gauss-Laguerre eigen solve failed for n = " + std::to_string(n));
  }
  QuadratureRule rule{solver.eigenvalues(), Eigen::VectorXd(n)};
  // Newton polish on p_n, then Christoffel weights 1 / sum_{k<n} p_k(x)^2
  for (int i = 0; i < n; ++i) {
    double x = rule.nodes[i];
    for (int it = 0; it < 3; ++it) {
      LaguerreEval e = laguerre_eval(n, a, x);
      if (e.dp == 0.0) break;
      x -= e.p / e.dp;
    }
    LaguerreEval e = laguerre_eval(n, a, x);
    rule.nodes[i] = x;
    rule.weights[i] = std::ldexp(1.0 / e.sum, -2 * e.exponent);
  }
  return rule;
}

QuadratureRule gauss_legendre_rule(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre rule needs n >= 1");
  QuadratureRule rule{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NumericError("Gauss-Legendre Newton iteration failed for n = " + std::to_string(n));
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureRule gauss_legendre_rule(int n, double lo, double hi) {
  QuadratureRule rule = gauss_legendre_rule(n);
  const double half = 0.5 * (hi - lo);
  rule.nodes = (rule.nodes.array() * half + 0.5 * (hi + lo)).matrix();
  rule.weights *= half;
  return rule;
}

}  // namespace osc
