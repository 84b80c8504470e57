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

#include "oscitool/hermite.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>

#include "oscitool/errors.hpp"
#include "tensor_ops.hpp"

namespace osc {

namespace {

constexpr double kRescale = 0x1p-500;
constexpr double kRescaleLog = 500.0 * std::numbers::ln2;
const double kPiQuarter = std::pow(std::numbers::pi, -0.25);

// Orthonormal Hermite polynomials p_{n-1}(x), p_n(x) (weight exp(-x^2)) as
// mantissas sharing the scale exp(log_scale).
struct ScaledPair {
  double prev;
  double last;
  double log_scale;
};

ScaledPair orthonormal_pair(int n, double x, double log_scale = 0.0) {
  double prev = 0.0;
  double last = kPiQuarter;
  for (int k = 0; k < n; ++k) {
    const double next = x * std::sqrt(2.0 / (k + 1)) * last - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = last;
    last = next;
    if (std::abs(last) > 1.0 / kRescale) {
      last *= kRescale;
      prev *= kRescale;
      log_scale += kRescaleLog;
    }
  }
  return {prev, last, log_scale};
}

}  // namespace

HermiteCoeffs::HermiteCoeffs(int dim, int trunc)
    : index_(SimplexIndex::get(dim, trunc)),
      values_(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(index_->size()))) {}

HermiteCoeffs::HermiteCoeffs(int dim, int trunc, Eigen::VectorXcd values)
    : index_(SimplexIndex::get(dim, trunc)), values_(std::move(values)) {
  if (values_.size() != static_cast<Eigen::Index>(index_->size())) {
    throw DomainError("coefficient vector length does not match the truncation simplex");
  }
}

HermiteCoeffs HermiteCoeffs::unit(int dim, int trunc, const MultiIndex& alpha) {
  HermiteCoeffs c(dim, trunc);
  c.set(alpha, 1.0);
  return c;
}

Complex HermiteCoeffs::at(const MultiIndex& alpha) const {
  if (alpha.dim() != dim()) throw DomainError("multi-index dimension mismatch");
  const std::size_t i = index_->find(alpha);
  return i == size() ? Complex{} : values_[static_cast<Eigen::Index>(i)];
}

void HermiteCoeffs::set(const MultiIndex& alpha, Complex value) {
  if (alpha.dim() != dim()) throw DomainError("multi-index dimension mismatch");
  const std::size_t i = index_->find(alpha);
  if (i == size()) throw DomainError("multi-index order exceeds truncation");
  values_[static_cast<Eigen::Index>(i)] = value;
}

HermiteCoeffs HermiteCoeffs::retruncated(int trunc) const {
  HermiteCoeffs out(dim(), trunc);
  const std::size_t n = std::min(out.size(), size());
  // Graded ordering makes the common prefix identical.
  out.values_.head(static_cast<Eigen::Index>(n)) = values_.head(static_cast<Eigen::Index>(n));
  return out;
}

std::vector<Eigen::Index> GridFunction::shape() const {
  std::vector<Eigen::Index> s;
  s.reserve(axes.size());
  for (const auto& a : axes) s.push_back(a.nodes.size());
  return s;
}

Eigen::Index GridFunction::point_count() const {
  Eigen::Index n = 1;
  for (const auto& a : axes) n *= a.nodes.size();
  return n;
}

void GridFunction::validate() const {
  if (axes.empty()) throw DomainError("grid function needs at least one axis");
  for (const auto& a : axes) {
    if (a.nodes.size() == 0 || a.nodes.size() != a.weights.size()) {
      throw DomainError("axis nodes and weights must be nonempty and of equal length");
    }
    for (Eigen::Index i = 0; i < a.nodes.size(); ++i) {
      if (!(a.weights[i] > 0.0)) throw DomainError("quadrature weights must be positive");
      if (i > 0 && !(a.nodes[i] > a.nodes[i - 1])) throw DomainError("axis nodes must be strictly increasing");
    }
  }
  if (values.size() != point_count()) throw DomainError("value count does not match grid shape");
}

Eigen::MatrixXd hermite_values(int N, const Eigen::Ref<const Eigen::VectorXd>& points) {
  if (N < 0) throw DomainError("Hermite order must be >= 0");
  Eigen::MatrixXd out(N + 1, points.size());
  for (Eigen::Index j = 0; j < points.size(); ++j) {
    const double x = points[j];
    if (!std::isfinite(x)) throw DomainError("Hermite evaluation point is not finite");
    double log_scale = -0.5 * x * x;
    double prev = 0.0;
    double last = kPiQuarter;
    for (int k = 0; k <= N; ++k) {
      const double v = last == 0.0 ? 0.0 : std::copysign(std::exp(std::log(std::abs(last)) + log_scale), last);
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "Hermite recurrence overflow at order " << k << ", point " << x;
        throw NumericError(msg.str());
      }
      out(k, j) = v;
      const double next = x * std::sqrt(2.0 / (k + 1)) * last - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
      prev = last;
      last = next;
      if (std::abs(last) > 1.0 / kRescale) {
        last *= kRescale;
        prev *= kRescale;
        log_scale += kRescaleLog;
      }
    }
  }
  return out;
}

QuadratureRule gauss_hermite_rule(int n) {
  if (n < 1) throw DomainError("Gauss-Hermite rule needs n >= 1");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("Gauss-Hermite eigenvalue solve failed for n = " + std::to_string(n));
  }
  Eigen::VectorXd x = solver.eigenvalues();

  // Newton polish on p_n using p_n' = sqrt(2n) p_{n-1}.
  const double dn = std::sqrt(2.0 * n);
  for (int i = 0; i < n; ++i) {
    bool converged = false;
    for (int it = 0; it < 20; ++it) {
      const ScaledPair p = orthonormal_pair(n, x[i]);
      const double dx = p.last / (dn * p.prev);
      x[i] -= dx;
      if (std::abs(dx) <= 4e-16 * (1.0 + std::abs(x[i]))) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw NumericError("Gauss-Hermite root polish did not converge for n = " + std::to_string(n));
    }
  }
  // Enforce the exact symmetry of the rule.
  for (int i = 0; i < n / 2; ++i) {
    const double a = 0.5 * (x[n - 1 - i] - x[i]);
    x[i] = -a;
    x[n - 1 - i] = a;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;

  QuadratureRule rule{x, Eigen::VectorXd(n)};
  for (int i = 0; i < n; ++i) {
    const ScaledPair p = orthonormal_pair(n - 1, x[i]);
    const double log_p = std::log(std::abs(p.last)) + p.log_scale;
    rule.weights[i] = std::exp(-std::log(static_cast<double>(n)) - 2.0 * log_p);
  }
  return rule;
}

Axis hermite_axis(int n, double scale) {
  if (!(scale > 0.0)) throw DomainError("axis scale must be positive");
  const QuadratureRule rule = gauss_hermite_rule(n);
  Axis axis{scale * rule.nodes, Eigen::VectorXd(n)};
  for (int i = 0; i < n; ++i) {
    // exp(x^2) w_i = 1 / (n h_{n-1}(x_i)^2), evaluated without overflow.
    const double xi = rule.nodes[i];
    const ScaledPair p = orthonormal_pair(n - 1, xi, -0.5 * xi * xi);
    const double log_h = std::log(std::abs(p.last)) + p.log_scale;
    axis.weights[i] = scale * std::exp(-std::log(static_cast<double>(n)) - 2.0 * log_h);
  }
  return axis;
}

std::vector<Axis> default_hermite_grid(int dim, int N) {
  if (dim < 1 || N < 0) throw DomainError("grid needs dim >= 1 and N >= 0");
  return std::vector<Axis>(static_cast<std::size_t>(dim), hermite_axis(2 * N + 1));
}

HermiteCoeffs analyze(const GridFunction& f, int N) {
  f.validate();
  if (N < 0) throw DomainError("truncation order must be >= 0");
  for (const auto& a : f.axes) {
    if (a.nodes.size() < N + 1) {
      std::ostringstream msg;
      msg << "grid too coarse for truncation N = " << N << ": an axis has " << a.nodes.size()
          << " nodes, h_N aliases below N+1";
      throw DomainError(msg.str());
    }
  }
  std::vector<Eigen::Index> shape = f.shape();
  Eigen::VectorXcd box = f.values;
  for (std::size_t k = 0; k < f.axes.size(); ++k) {
    const Axis& a = f.axes[k];
    const Eigen::MatrixXd m = hermite_values(N, a.nodes) * a.weights.asDiagonal();
    box = detail::contract_axis(box, shape, k, m);
  }
  HermiteCoeffs c(f.dim(), N);
  std::vector<Eigen::Index> box_shape(f.axes.size(), N + 1);
  for (std::size_t i = 0; i < c.size(); ++i) {
    Eigen::Index flat = 0;
    for (int j = 0; j < c.dim(); ++j) flat = flat * (N + 1) + c.alpha(i)[j];
    c[i] = box[flat];
  }
  return c;
}

HermiteCoeffs analyze(const PointFunction& f, int dim, int N) {
  return analyze(sample(f, default_hermite_grid(dim, N)), N);
}

GridFunction synthesize(const HermiteCoeffs& c, const std::vector<Axis>& axes) {
  if (static_cast<int>(axes.size()) != c.dim()) throw DomainError("grid dimension does not match coefficients");
  const int N = c.trunc();
  std::vector<Eigen::Index> shape(axes.size(), N + 1);
  Eigen::VectorXcd box = Eigen::VectorXcd::Zero(detail::product(shape, 0, shape.size()));
  for (std::size_t i = 0; i < c.size(); ++i) {
    Eigen::Index flat = 0;
    for (int j = 0; j < c.dim(); ++j) flat = flat * (N + 1) + c.alpha(i)[j];
    box[flat] = c[i];
  }
  for (std::size_t k = 0; k < axes.size(); ++k) {
    const Eigen::MatrixXd m = hermite_values(N, axes[k].nodes).transpose();
    box = detail::contract_axis(box, shape, k, m);
  }
  return GridFunction{axes, std::move(box)};
}

Complex synthesize_at(const HermiteCoeffs& c, std::span<const double> x) {
  if (static_cast<int>(x.size()) != c.dim()) throw DomainError("point dimension does not match coefficients");
  std::vector<Eigen::MatrixXd> tables;
  tables.reserve(x.size());
  for (double xi : x) tables.push_back(hermite_values(c.trunc(), Eigen::VectorXd::Constant(1, xi)));
  Complex s{};
  for (std::size_t i = 0; i < c.size(); ++i) {
    double h = 1.0;
    for (int j = 0; j < c.dim(); ++j) h *= tables[static_cast<std::size_t>(j)](c.alpha(i)[j], 0);
    s += c[i] * h;
  }
  return s;
}

GridFunction sample(const PointFunction& f, const std::vector<Axis>& axes) {
  GridFunction g{axes, {}};
  const std::vector<Eigen::Index> shape = g.shape();
  g.values.resize(g.point_count());
  std::vector<Eigen::Index> idx;
  std::vector<double> x(axes.size());
  for (Eigen::Index p = 0; p < g.values.size(); ++p) {
    detail::unravel(p, shape, idx);
    for (std::size_t k = 0; k < axes.size(); ++k) x[k] = axes[k].nodes[idx[k]];
    g.values[p] = f(x);
  }
  return g;
}

}  // namespace osc
