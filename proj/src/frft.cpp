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

#include "oscitool/frft.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "oscitool/errors.hpp"
#include "tensor_ops.hpp"

namespace osc {

namespace {

using std::numbers::pi;

// Real part to (-2, 2]; odd in the phase away from the endpoint, so that
// negation commutes with reduction.
Complex reduce_phase(Complex phase) {
  double re = std::fmod(phase.real(), 4.0);
  if (re > 2.0) re -= 4.0;
  if (re <= -2.0) re += 4.0;
  return {re, phase.imag()};
}

Complex phase_value(Complex phase) {
  // exp(-i pi (a + i b) / 2) = exp(pi b / 2) (cos(pi a / 2) - i sin(pi a / 2))
  const double a = phase.real();
  const double modulus = std::exp(0.5 * pi * phase.imag());
  Complex unit;
  if (a == 0.0) {
    unit = {1.0, 0.0};
  } else if (a == 1.0) {
    unit = {0.0, -1.0};
  } else if (a == 2.0) {
    unit = {-1.0, 0.0};
  } else if (a == -1.0) {
    unit = {0.0, 1.0};
  } else {
    unit = {std::cos(0.5 * pi * a), -std::sin(0.5 * pi * a)};
  }
  return modulus * unit;
}

Complex phase_of(const FracOrder& rho, const MultiIndex& alpha) {
  Complex phase{};
  for (int j = 0; j < alpha.dim(); ++j) phase += reduce_phase(rho.rho[j] * static_cast<double>(alpha[j]));
  return reduce_phase(phase);
}

// Even integer order m = rho / 2 when rho is (numerically) in 2Z.
bool even_integer(double rho, long& half) {
  const double h = std::round(rho / 2.0);
  if (std::abs(rho - 2.0 * h) > 1e-12) return false;
  half = static_cast<long>(h);
  return true;
}

}  // namespace

FrftMultiplier::FrftMultiplier(const FracOrder& order, int trunc)
    : index_(SimplexIndex::get(order.dim(), trunc)),
      phases_(static_cast<Eigen::Index>(index_->size())) {
  for (std::size_t i = 0; i < index_->size(); ++i) {
    phases_[static_cast<Eigen::Index>(i)] = phase_of(order, (*index_)[i]);
  }
}

FrftMultiplier::FrftMultiplier(std::shared_ptr<const SimplexIndex> index, Eigen::VectorXcd phases)
    : index_(std::move(index)), phases_(std::move(phases)) {}

Complex FrftMultiplier::value(std::size_t i) const { return phase_value(phases_[static_cast<Eigen::Index>(i)]); }

HermiteCoeffs FrftMultiplier::apply(const HermiteCoeffs& c) const {
  if (c.dim() != dim()) throw DomainError("order dimension does not match coefficients");
  if (c.trunc() > trunc()) throw DomainError("multiplier truncation is below the coefficient truncation");
  HermiteCoeffs out(c.dim(), c.trunc());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] * value(i);
  return out;
}

FrftMultiplier operator*(const FrftMultiplier& a, const FrftMultiplier& b) {
  if (a.index_ != b.index_) throw DomainError("multipliers live on different truncation simplices");
  Eigen::VectorXcd phases = a.phases_ + b.phases_;
  for (auto& p : phases) p = reduce_phase(p);
  return FrftMultiplier(a.index_, std::move(phases));
}

FrftMultiplier FrftMultiplier::inverse() const {
  Eigen::VectorXcd phases = -phases_;
  for (auto& p : phases) p = reduce_phase(p);
  return FrftMultiplier(index_, std::move(phases));
}

Complex frft_multiplier(const FracOrder& rho, const MultiIndex& alpha) {
  if (rho.dim() != alpha.dim()) throw DomainError("order dimension does not match multi-index");
  return phase_value(phase_of(rho, alpha));
}

HermiteCoeffs spectral_frft(const HermiteCoeffs& c, const FracOrder& rho) {
  if (rho.dim() != c.dim()) throw DomainError("order dimension does not match coefficients");
  return FrftMultiplier(rho, c.trunc()).apply(c);
}

Complex frft_kernel(double rho, double xi, double x) {
  const double theta = 0.5 * pi * rho;
  const double s = std::sin(theta);
  const double cs = std::cos(theta);
  const Complex pref = std::sqrt(Complex(1.0, -cs / s) / (2.0 * pi));
  const double arg = ((x * x + xi * xi) * cs - 2.0 * xi * x) / (2.0 * s);
  return pref * std::polar(1.0, arg);
}

namespace {

Eigen::MatrixXcd chirp_matrix(double rho, const Axis& out, const Axis& in) {
  Eigen::MatrixXcd m(out.nodes.size(), in.nodes.size());
  for (Eigen::Index r = 0; r < out.nodes.size(); ++r) {
    for (Eigen::Index i = 0; i < in.nodes.size(); ++i) m(r, i) = frft_kernel(rho, out.nodes[r], in.nodes[i]) * in.weights[i];
  }
  return m;
}

}  // namespace

GridFunction kernel_frft(const GridFunction& f, std::span<const double> rho, const std::vector<Axis>& out_axes) {
  f.validate();
  if (static_cast<int>(rho.size()) != f.dim() || out_axes.size() != f.axes.size()) {
    throw DomainError("order and output axes must match the grid dimension");
  }
  std::vector<Eigen::Index> shape = f.shape();
  Eigen::VectorXcd values = f.values;
  for (std::size_t k = 0; k < f.axes.size(); ++k) {
    const Axis& in = f.axes[k];
    const Axis& out = out_axes[k];
    long half = 0;
    if (even_integer(rho[k], half)) {
      const bool parity = (half % 2) != 0;
      if (out.nodes.size() != in.nodes.size()) {
        throw DomainError("even-integer order needs output nodes equal to the input nodes");
      }
      const Eigen::Index n = in.nodes.size();
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
      for (Eigen::Index r = 0; r < n; ++r) {
        const Eigen::Index src = parity ? n - 1 - r : r;
        const double expect = parity ? -out.nodes[r] : out.nodes[r];
        if (std::abs(in.nodes[src] - expect) > 1e-12 * (1.0 + std::abs(expect))) {
          throw DomainError("even-integer order needs output nodes equal to the (mirrored) input nodes");
        }
        m(r, src) = 1.0;
      }
      values = detail::contract_axis(values, shape, k, m);
      continue;
    }
    if (std::abs(std::sin(0.5 * pi * rho[k])) < kKernelSingularity) {
      std::ostringstream msg;
      msg << "order " << rho[k] << " is too close to an even integer for the kernel route; use spectral_frft";
      throw DomainError(msg.str());
    }
    // |cot| > 1: F_{rho-1} F_1 through the input nodes
    const double theta = 0.5 * pi * rho[k];
    Eigen::MatrixXcd m = std::abs(std::cos(theta)) > std::abs(std::sin(theta))
                             ? Eigen::MatrixXcd(chirp_matrix(rho[k] - 1.0, out, in) * chirp_matrix(1.0, in, in))
                             : chirp_matrix(rho[k], out, in);
    values = detail::contract_axis(values, shape, k, m);
  }
  return GridFunction{out_axes, std::move(values)};
}

GridFunction kernel_frft(const GridFunction& f, double rho, const std::vector<Axis>& out_axes) {
  const std::vector<double> orders(f.axes.size(), rho);
  return kernel_frft(f, orders, out_axes);
}

double frft_compose_check(const FracOrder& rho1, const FracOrder& rho2, const HermiteCoeffs& c) {
  if (rho1.dim() != c.dim() || rho2.dim() != c.dim()) throw DomainError("order dimension does not match coefficients");
  const FrftMultiplier two_step = FrftMultiplier(rho1, c.trunc()) * FrftMultiplier(rho2, c.trunc());
  const FrftMultiplier one_step(rho1 + rho2, c.trunc());
  const HermiteCoeffs a = two_step.apply(c);
  const HermiteCoeffs b = one_step.apply(c);
  return (a.values() - b.values()).cwiseAbs().maxCoeff();
}

}  // namespace osc
