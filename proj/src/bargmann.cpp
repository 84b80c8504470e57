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

#include "oscitool/bargmann.hpp"

#include <cmath>
#include <numbers>

#include "oscitool/errors.hpp"
#include "tensor_ops.hpp"

namespace osc {

namespace {

using std::numbers::pi;

// e_k(z) = z^k / sqrt(k!), k = 0..n.
Eigen::VectorXcd monomial_table(int n, Complex z) {
  Eigen::VectorXcd e(n + 1);
  e[0] = 1.0;
  for (int k = 1; k <= n; ++k) e[k] = e[k - 1] * z / std::sqrt(static_cast<double>(k));
  return e;
}

}  // namespace

Complex FockSeries::operator()(std::span<const Complex> z) const {
  const int d = coeffs.dim();
  if (static_cast<int>(z.size()) != d) throw DomainError("evaluation point dimension does not match series");
  const int N = coeffs.trunc();
  std::vector<Eigen::VectorXcd> tables;
  tables.reserve(z.size());
  double z2 = 0.0;
  for (Complex zj : z) {
    tables.push_back(monomial_table(N, zj));
    z2 += std::norm(zj);
  }
  const SimplexIndex& idx = coeffs.index();
  // Suffix l2 mass by order.
  std::vector<double> tail(static_cast<std::size_t>(N) + 2, 0.0);
  for (int n = N; n >= 0; --n) {
    double m = 0.0;
    for (std::size_t i = idx.order_begin(n); i < idx.order_begin(n + 1); ++i) m += std::norm(coeffs[i]);
    tail[static_cast<std::size_t>(n)] = tail[static_cast<std::size_t>(n) + 1] + m;
  }
  const double growth = std::exp(0.5 * z2);
  Complex sum{};
  for (int n = 0; n <= N; ++n) {
    if (std::sqrt(tail[static_cast<std::size_t>(n)]) * growth < 1e-14) break;
    for (std::size_t i = idx.order_begin(n); i < idx.order_begin(n + 1); ++i) {
      Complex term = coeffs[i];
      for (int j = 0; j < d; ++j) term *= tables[static_cast<std::size_t>(j)][idx[i][j]];
      sum += term;
    }
  }
  return sum;
}

Eigen::VectorXcd PhasePoint::z() const {
  Eigen::VectorXcd out(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) out[j] = Complex(x[j], xi[j]);
  return out;
}

FockSeries bargmann_from_coeffs(const HermiteCoeffs& c) { return FockSeries{c}; }

Complex bargmann_kernel(const GridFunction& f, std::span<const Complex> z) {
  f.validate();
  if (static_cast<int>(z.size()) != f.dim()) throw DomainError("evaluation point dimension does not match grid");
  std::vector<Eigen::Index> shape = f.shape();
  Eigen::VectorXcd values = f.values;
  const double norm = std::pow(pi, -0.25);
  for (std::size_t k = 0; k < f.axes.size(); ++k) {
    const Axis& a = f.axes[k];
    Eigen::MatrixXcd row(1, a.nodes.size());
    for (Eigen::Index i = 0; i < a.nodes.size(); ++i) {
      const double y = a.nodes[i];
      const Complex expo = -0.5 * (z[k] * z[k] + y * y) + std::sqrt(2.0) * z[k] * y;
      if (expo.real() > 700.0) throw NumericError("Bargmann kernel overflow: Re z too large for the grid");
      row(0, i) = norm * std::exp(expo) * a.weights[i];
    }
    values = detail::contract_axis(values, shape, k, row);
  }
  const Complex out = values[0];
  if (!std::isfinite(out.real()) || !std::isfinite(out.imag())) throw NumericError("Bargmann kernel quadrature is not finite");
  return out;
}

double gaussian_window(std::span<const double> x) {
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  return std::pow(pi, -0.25 * static_cast<double>(x.size())) * std::exp(-0.5 * r2);
}

namespace {

// Prefactor of the Bargmann link and the Fock-space argument conj(z)/sqrt 2.
Complex link_prefactor(const PhasePoint& pt, std::vector<Complex>& w) {
  const Eigen::Index d = pt.x.size();
  if (pt.xi.size() != d) throw DomainError("phase point halves differ in dimension");
  w.resize(static_cast<std::size_t>(d));
  double z2 = 0.0;
  double xxi = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    w[static_cast<std::size_t>(j)] = Complex(pt.x[j], -pt.xi[j]) / std::sqrt(2.0);
    z2 += pt.x[j] * pt.x[j] + pt.xi[j] * pt.xi[j];
    xxi += pt.x[j] * pt.xi[j];
  }
  return std::pow(2.0 * pi, -0.5 * static_cast<double>(d)) * std::exp(-0.25 * z2) * std::polar(1.0, -0.5 * xxi);
}

}  // namespace

Complex stft_gaussian(const HermiteCoeffs& c, const PhasePoint& pt) {
  if (pt.dim() != c.dim()) throw DomainError("phase point dimension does not match coefficients");
  std::vector<Complex> w;
  const Complex pref = link_prefactor(pt, w);
  return pref * bargmann_from_coeffs(c)(w);
}

Complex stft_gaussian(const GridFunction& f, const PhasePoint& pt) {
  if (pt.dim() != f.dim()) throw DomainError("phase point dimension does not match grid");
  std::vector<Complex> w;
  const Complex pref = link_prefactor(pt, w);
  return pref * bargmann_kernel(f, w);
}

PhasePoint phase_rotation(const PhasePoint& pt, std::span<const double> rho) {
  if (static_cast<int>(rho.size()) != pt.dim()) throw DomainError("order dimension does not match phase point");
  PhasePoint out{pt.x, pt.xi};
  for (Eigen::Index j = 0; j < pt.x.size(); ++j) {
    const double theta = 0.5 * pi * rho[static_cast<std::size_t>(j)];
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    out.x[j] = c * pt.x[j] - s * pt.xi[j];
    out.xi[j] = s * pt.x[j] + c * pt.xi[j];
  }
  return out;
}

}  // namespace osc
