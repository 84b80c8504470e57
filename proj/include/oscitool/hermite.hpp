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

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "oscitool/multi_index.hpp"

namespace osc {

using Complex = std::complex<double>;

/// Truncated Hermite coefficient sequence c(alpha), |alpha| <= trunc.
/// Storage follows the graded lexicographic order of SimplexIndex.
class HermiteCoeffs {
 public:
  HermiteCoeffs(int dim, int trunc);
  HermiteCoeffs(int dim, int trunc, Eigen::VectorXcd values);

  static HermiteCoeffs unit(int dim, int trunc, const MultiIndex& alpha);

  [[nodiscard]] int dim() const { return index_->dim(); }
  [[nodiscard]] int trunc() const { return index_->trunc(); }
  [[nodiscard]] std::size_t size() const { return index_->size(); }
  [[nodiscard]] const SimplexIndex& index() const { return *index_; }
  [[nodiscard]] const MultiIndex& alpha(std::size_t i) const { return (*index_)[i]; }

  [[nodiscard]] Eigen::VectorXcd& values() { return values_; }
  [[nodiscard]] const Eigen::VectorXcd& values() const { return values_; }
  Complex& operator[](std::size_t i) { return values_[static_cast<Eigen::Index>(i)]; }
  Complex operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }

  /// Coefficient at alpha; zero for |alpha| > trunc.
  [[nodiscard]] Complex at(const MultiIndex& alpha) const;
  /// Throws DomainError when |alpha| > trunc.
  void set(const MultiIndex& alpha, Complex value);

  /// (sum |c(alpha)|^2)^(1/2)
  [[nodiscard]] double l2_norm() const { return values_.norm(); }

  /// Same coefficients with the truncation raised or lowered.
  [[nodiscard]] HermiteCoeffs retruncated(int trunc) const;

 private:
  std::shared_ptr<const SimplexIndex> index_;
  Eigen::VectorXcd values_;
};

/// Nodes and weights of a quadrature rule.
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// One axis of a tensor grid: nodes with weights for Lebesgue measure.
struct Axis {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Complex samples on a tensor-product grid, row-major (last axis fastest).
struct GridFunction {
  std::vector<Axis> axes;
  Eigen::VectorXcd values;

  [[nodiscard]] int dim() const { return static_cast<int>(axes.size()); }
  [[nodiscard]] std::vector<Eigen::Index> shape() const;
  [[nodiscard]] Eigen::Index point_count() const;
  /// Throws DomainError when shapes or weights are inconsistent.
  void validate() const;
};

/// Rows 0..N hold the L^2-normalized Hermite functions h_k at each point.
///
/// Uses the recurrence on normalized functions
///   h_{k+1} = x sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1}
/// with a running power-of-two rescaling, so neither factorials nor
/// exp(-x^2/2) underflow limit the range of k or x.
Eigen::MatrixXd hermite_values(int N, const Eigen::Ref<const Eigen::VectorXd>& points);

/// Gauss-Hermite rule for the weight exp(-x^2): n roots of H_n with the
/// Christoffel weights. Exact for polynomials of degree <= 2n-1.
QuadratureRule gauss_hermite_rule(int n);

/// Gauss-Hermite nodes scaled by `scale`, carrying Lebesgue weights:
/// sum_i w_i g(x_i) approximates the integral of g over the real line and is
/// exact for g(x) = poly(x) exp(-(x/scale)^2) with deg poly <= 2n-1.
Axis hermite_axis(int n, double scale = 1.0);

/// Tensor grid of `dim` copies of hermite_axis(2N+1); integrates products
/// h_alpha h_beta with |alpha|,|beta| <= N exactly.
std::vector<Axis> default_hermite_grid(int dim, int N);

/// c(alpha) = <f, h_alpha> by tensor quadrature. Throws DomainError when an
/// axis has fewer than N+1 nodes (h_N would alias).
HermiteCoeffs analyze(const GridFunction& f, int N);

using PointFunction = std::function<Complex(std::span<const double>)>;

/// Samples f on default_hermite_grid(dim, N) and analyzes.
HermiteCoeffs analyze(const PointFunction& f, int dim, int N);

/// sum_alpha c(alpha) h_alpha evaluated on the tensor grid.
GridFunction synthesize(const HermiteCoeffs& c, const std::vector<Axis>& axes);

/// sum_alpha c(alpha) h_alpha at a single point.
Complex synthesize_at(const HermiteCoeffs& c, std::span<const double> x);

/// Samples a callable on a grid.
GridFunction sample(const PointFunction& f, const std::vector<Axis>& axes);

}  // namespace osc
