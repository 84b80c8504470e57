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

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "oscitool/bargmann.hpp"
#include "oscitool/hermite.hpp"

namespace osc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Uniform phase-space lattice: every x_j and xi_j axis carries the same
/// symmetric nodes on [-L, L].
struct Lattice {
  int dim = 1;
  Eigen::VectorXd nodes;

  static Lattice symmetric(int dim, int n, double half_width);
  /// L = sqrt(2N) + 4, so every h_alpha with |alpha| <= N has negligible
  /// STFT at the edge.
  static Lattice for_truncation(int dim, int N, int n = 129);

  [[nodiscard]] Eigen::Index axis_size() const { return nodes.size(); }
  [[nodiscard]] double half_width() const { return nodes[nodes.size() - 1]; }
  [[nodiscard]] double spacing() const { return nodes[1] - nodes[0]; }
  /// Number of x (equivalently xi) points, axis_size()^dim.
  [[nodiscard]] Eigen::Index side() const;
  /// Phase point of row `ix` (flattened x) and column `ixi` (flattened xi).
  [[nodiscard]] PhasePoint point(Eigen::Index ix, Eigen::Index ixi) const;
};

/// Samples on a Lattice: rows index x, columns index xi (row-major
/// flattening over the d axes in both cases).
struct StftMatrix {
  Lattice lattice;
  Eigen::MatrixXcd values;
  std::string window = "gaussian";

  [[nodiscard]] Eigen::MatrixXd modulus() const { return values.cwiseAbs(); }
};

/// Gaussian-window STFT of sum c(alpha) h_alpha on the lattice.
StftMatrix stft_matrix(const HermiteCoeffs& c, const Lattice& lattice);

/// Samples an arbitrary phase-space function on the lattice.
StftMatrix sample_phase_space(const Lattice& lattice, const std::function<Complex(const PhasePoint&)>& f);

using RadialProfile = std::function<double(std::span<const double>)>;

/// Phase-space weight.
class Weight {
 public:
  enum class Kind { kConstant, kPolynomial, kRotational, kCustom };

  static Weight constant(double value = 1.0);
  /// <(x, xi)>^r = (1 + |x|^2 + |xi|^2)^{r/2}
  static Weight polynomial(double r);
  /// omega(x, xi) = w0(rho) with rho_j = x_j^2 + xi_j^2.
  static Weight rotational(RadialProfile w0);
  static Weight custom(std::function<double(const PhasePoint&)> f);

  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] double parameter() const { return param_; }
  [[nodiscard]] double operator()(const PhasePoint& pt) const;

  /// omega o phase_rotation(., rho). Constant, polynomial and rotational
  /// weights are returned unchanged.
  [[nodiscard]] Weight rotated(std::span<const double> rho) const;

 private:
  Kind kind_ = Kind::kConstant;
  double param_ = 1.0;
  RadialProfile w0_;
  std::function<double(const PhasePoint&)> f_;
};

enum class NormFlavor {
  kM,  ///< L^{p,q}: L^p over x inside, L^q over xi outside
  kW,  ///< L^{p,q}_*: L^q over xi inside, L^p over x outside
};

struct MixedNormSpec {
  double p = 2.0;
  double q = 2.0;
  NormFlavor flavor = NormFlavor::kM;
  Weight weight = Weight::constant();
};

namespace detail {

template <typename Derived>
double lebesgue_sum(const Eigen::DenseBase<Derived>& v, double p, double cell) {
  double m = v.maxCoeff();
  if (m == 0.0) return 0.0;
  if (std::isinf(p)) return m;
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(v(i) / m, p);
  return m * std::pow(s * cell, 1.0 / p);
}

}  // namespace detail

/// Riemann-sum mixed norm of nonnegative samples a(x, xi) (rows x, columns
/// xi); `cell` is the d-dimensional cell volume of either factor. p and q may
/// lie below 1 (quasi-norms) or be infinite.
template <typename Derived>
double mixed_lebesgue_norm(const Eigen::DenseBase<Derived>& a, double p, double q, NormFlavor flavor,
                           double cell) {
  if (flavor == NormFlavor::kM) {
    Eigen::VectorXd inner(a.cols());
    for (Eigen::Index k = 0; k < a.cols(); ++k) inner[k] = detail::lebesgue_sum(a.col(k), p, cell);
    return detail::lebesgue_sum(inner, q, cell);
  }
  Eigen::VectorXd inner(a.rows());
  for (Eigen::Index k = 0; k < a.rows(); ++k) inner[k] = detail::lebesgue_sum(a.row(k), q, cell);
  return detail::lebesgue_sum(inner, p, cell);
}

/// |S| times the weight, sampled on the lattice. Throws DomainError on NaN
/// samples or non-positive weight values.
Eigen::MatrixXd weighted_modulus(const StftMatrix& s, const Weight& w);

/// M^{p,q}_(omega) or W^{p,q}_(omega) quasi-norm of the sampled STFT.
double mixed_norm(const StftMatrix& s, const MixedNormSpec& spec);

struct RotatedSamples {
  StftMatrix samples;
  /// Largest modulus on the lattice edge relative to the overall maximum; a
  /// rotation can carry roughly this fraction of the peak out of the lattice.
  double edge_fraction = 0.0;
};

/// (T_rho S)(x, xi) = S(phase_rotation((x, xi), rho)) by multilinear
/// interpolation; points rotated off the lattice read zero.
RotatedSamples rotate_samples(const StftMatrix& s, std::span<const double> rho);
RotatedSamples rotate_samples(const StftMatrix& s, double rho);

enum class MinkowskiForm {
  kSine,    ///< ||T F||_{L^{q,p}} <= |sin|^{d(1/p-1/q)} ||F||_{L^{p,q}}, rho outside 2Z
  kCosine,  ///< ||T F||_{L^{p,q}_*} <= |cos|^{d(1/p-1/q)} ||F||_{L^{p,q}}, rho outside 2Z+1
};

struct MinkowskiReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

inline constexpr double kMinkowskiSlack = 0.02;

/// Both sides of the rotated Minkowski inequality on |S|; pass iff
/// lhs <= rhs (1 + kMinkowskiSlack). Needs q <= p and an admissible rho.
MinkowskiReport verify_minkowski(const StftMatrix& s, double p, double q, double rho,
                                 MinkowskiForm form = MinkowskiForm::kSine);

enum class EstimateDirection {
  kMtoM,  ///< M^{p,q}_(omega) -> M^{q,p}_(omega_rho), sine factor
  kWtoW,  ///< W^{q,p}_(omega) -> W^{p,q}_(omega_rho), sine factor
  kMtoW,  ///< M^{p,q}_(omega) -> W^{p,q}_(omega_rho), cosine factor
  kWtoM,  ///< W^{q,p}_(omega) -> M^{q,p}_(omega_rho), cosine factor
};

struct EstimateReport {
  double lhs = 0.0;     ///< target norm of F_rho f
  double source = 0.0;  ///< source norm of f
  double factor = 0.0;  ///< prod_j |sin or cos(pi rho_j / 2)|^{1/p - 1/q}
  double rhs = 0.0;     ///< factor * source
  double ratio = 0.0;   ///< lhs / rhs
};

/// Evaluates both sides of the FrFT mapping estimate on the lattice. The
/// implied constant is reported through `ratio`, never assumed to be 1.
EstimateReport verify_frft_mod_estimate(const HermiteCoeffs& c, std::span<const double> rho, double p, double q,
                                        const Weight& w, EstimateDirection dir, const Lattice& lattice);

/// nu(alpha) = (alpha!^{-1} int_{R_+^d} r^alpha w0(r)^2 e^{-|r|_1} dr)^{1/2} by
/// generalized Gauss-Laguerre quadrature per axis. Throws NumericError when
/// the tail of the quadrature sum indicates a divergent integral.
double nu_omega(const RadialProfile& w0, const MultiIndex& alpha);

/// (sum |c(alpha) nu(alpha)|^2)^{1/2}
double hilbert_mod_norm(const HermiteCoeffs& c, const RadialProfile& w0);

/// Least-squares slope of y against x.
double fitted_slope(std::span<const double> x, std::span<const double> y);

}  // namespace osc
