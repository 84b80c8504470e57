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

/// Order rho in C^d of a multiple-order fractional Fourier transform.
struct FracOrder {
  Eigen::VectorXcd rho;

  FracOrder() = default;
  explicit FracOrder(Eigen::VectorXcd r) : rho(std::move(r)) {}
  static FracOrder uniform(int dim, Complex value) {
    return FracOrder(Eigen::VectorXcd::Constant(dim, value));
  }

  [[nodiscard]] int dim() const { return static_cast<int>(rho.size()); }
  [[nodiscard]] Complex sum() const { return rho.sum(); }
  [[nodiscard]] bool is_real() const { return rho.imag().cwiseAbs().maxCoeff() == 0.0; }

  friend FracOrder operator+(const FracOrder& a, const FracOrder& b) { return FracOrder(a.rho + b.rho); }
  friend FracOrder operator-(const FracOrder& a) { return FracOrder(-a.rho); }
};

/// Element of the Hermite multiplier algebra generated by the transforms:
/// the multiplier at alpha is exp(-i pi phase(alpha) / 2), and the real part
/// of each phase is kept reduced to (-2, 2]. Composition adds phases, so the
/// group law and the period 4 hold bit-for-bit whenever the orders are
/// dyadic rationals.
class FrftMultiplier {
 public:
  FrftMultiplier(const FracOrder& order, int trunc);

  [[nodiscard]] int dim() const { return index_->dim(); }
  [[nodiscard]] int trunc() const { return index_->trunc(); }
  [[nodiscard]] const Eigen::VectorXcd& phases() const { return phases_; }

  /// exp(-i pi phase / 2), exact when the reduced phase is an integer.
  [[nodiscard]] Complex value(std::size_t i) const;

  [[nodiscard]] HermiteCoeffs apply(const HermiteCoeffs& c) const;

  friend FrftMultiplier operator*(const FrftMultiplier& a, const FrftMultiplier& b);
  [[nodiscard]] FrftMultiplier inverse() const;

 private:
  FrftMultiplier(std::shared_ptr<const SimplexIndex> index, Eigen::VectorXcd phases);
  std::shared_ptr<const SimplexIndex> index_;
  Eigen::VectorXcd phases_;
};

/// prod_j exp(-i pi rho_j alpha_j / 2), with exact values at integer phases.
Complex frft_multiplier(const FracOrder& rho, const MultiIndex& alpha);

/// Spectral route: alpha -> c(alpha) prod_j exp(-i pi rho_j alpha_j / 2).
/// Complex orders are allowed.
HermiteCoeffs spectral_frft(const HermiteCoeffs& c, const FracOrder& rho);

/// One-dimensional chirp kernel K_rho(xi, x) for real rho outside 2Z, with the
/// principal branch of ((1 - i cot(pi rho / 2)) / (2 pi))^{1/2}.
Complex frft_kernel(double rho, double xi, double x);

/// Gauss-Hermite axis suited to the kernel route: scale 0.8 keeps the outer
/// nodes inside the band the quadrature resolves for Hermite-type inputs.
inline Axis kernel_axis(int n) { return hermite_axis(n, 0.8); }

/// Smallest |sin(pi rho / 2)| accepted by kernel_frft.
inline constexpr double kKernelSingularity = 1e-3;

/// Kernel route: integral of K_rho(xi, x) f(x) dx by the grid's quadrature,
/// one axis at a time, evaluated at the nodes of `out_axes`. Orders with
/// |cot(pi rho / 2)| > 1 are applied as F_{rho-1} F_1 with the intermediate
/// values on the input nodes. Even integer
/// orders dispatch to the identity (rho in 4Z) or the parity map (rho in
/// 2 + 4Z); those require the output nodes to coincide with the input nodes.
/// Throws DomainError when |sin(pi rho_j / 2)| < kKernelSingularity for a
/// non-even order; use spectral_frft there.
GridFunction kernel_frft(const GridFunction& f, std::span<const double> rho, const std::vector<Axis>& out_axes);
GridFunction kernel_frft(const GridFunction& f, double rho, const std::vector<Axis>& out_axes);

/// max_alpha |(F_rho1 F_rho2 c - F_{rho1 + rho2} c)(alpha)| evaluated in the
/// multiplier algebra.
double frft_compose_check(const FracOrder& rho1, const FracOrder& rho2, const HermiteCoeffs& c);

}  // namespace osc
