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

#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "oscitool/hermite.hpp"

namespace osc {

/// Entire function F(z) = sum_alpha c(alpha) z^alpha / sqrt(alpha!) on C^d.
struct FockSeries {
  HermiteCoeffs coeffs;

  /// Graded summation, stopped once the Cauchy-Schwarz tail bound
  /// (remaining l2 mass) * exp(|z|^2 / 2) drops below 1e-14.
  [[nodiscard]] Complex operator()(std::span<const Complex> z) const;
};

/// Point (x, xi) of phase space R^{2d}; z = x + i xi.
struct PhasePoint {
  Eigen::VectorXd x;
  Eigen::VectorXd xi;

  [[nodiscard]] int dim() const { return static_cast<int>(x.size()); }
  [[nodiscard]] Eigen::VectorXcd z() const;
};

/// The Bargmann transform maps h_alpha to z^alpha / sqrt(alpha!), so on
/// Hermite coefficients it is a re-tagging of the carrier.
FockSeries bargmann_from_coeffs(const HermiteCoeffs& c);

/// pi^{-d/4} integral exp(-(<z,z> + |y|^2)/2 + sqrt(2) <z,y>) f(y) dy by the
/// grid quadrature (<.,.> bilinear). Throws NumericError on overflow.
Complex bargmann_kernel(const GridFunction& f, std::span<const Complex> z);

/// Gaussian window phi(x) = pi^{-d/4} exp(-|x|^2 / 2).
double gaussian_window(std::span<const double> x);

/// Short-time Fourier transform with the Gaussian window via the Bargmann
/// link V f(x, xi) = (2 pi)^{-d/2} e^{-|z|^2/4} e^{-i<x,xi>/2} (Bf)(conj(z)/sqrt 2).
Complex stft_gaussian(const HermiteCoeffs& c, const PhasePoint& pt);
Complex stft_gaussian(const GridFunction& f, const PhasePoint& pt);

/// Rotation of each (x_j, xi_j) plane by theta_j = pi rho_j / 2:
///   (x, xi) -> (x cos - xi sin, x sin + xi cos).
/// This is the map with |V(F_rho f)| = |V f o rotation|.
PhasePoint phase_rotation(const PhasePoint& pt, std::span<const double> rho);

}  // namespace osc
