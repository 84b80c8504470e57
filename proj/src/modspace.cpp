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

#include "oscitool/modspace.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numbers>

#include "oscitool/errors.hpp"
#include "oscitool/frft.hpp"
#include "oscitool/quadrature.hpp"

namespace osc {

using Eigen::Index;

Lattice Lattice::symmetric(int dim, int n, double half_width) {
  if (dim < 1) throw DomainError("lattice dimension must be >= 1");
  if (n < 2) throw DomainError("lattice needs at least 2 points per axis");
  if (!(half_width > 0.0)) throw DomainError("lattice half width must be positive");
  Lattice l;
  l.dim = dim;
  l.nodes = Eigen::VectorXd::LinSpaced(n, -half_width, half_width);
  return l;
}

Lattice Lattice::for_truncation(int dim, int N, int n) {
  return symmetric(dim, n, std::sqrt(2.0 * N) + 4.0);
}

Index Lattice::side() const {
  Index s = 1;
  for (int j = 0; j < dim; ++j) s *= axis_size();
  return s;
}

PhasePoint Lattice::point(Index ix, Index ixi) const {
  PhasePoint pt{Eigen::VectorXd(dim), Eigen::VectorXd(dim)};
  const Index n = axis_size();
  for (int j = dim - 1; j >= 0; --j) {
    pt.x[j] = nodes[ix % n];
    pt.xi[j] = nodes[ixi % n];
    ix /= n;
    ixi /= n;
  }
  return pt;
}

StftMatrix stft_matrix(const HermiteCoeffs& c, const Lattice& lattice) {
  if (c.dim() != lattice.dim) throw DomainError("stft_matrix: coefficient and lattice dimensions differ");
  const int d = c.dim();
  const int N = c.trunc();
  const Index n = lattice.axis_size();
  // g_k(w) = w^k / sqrt(k!) e^{-|w|^2/2} for w = (x - i xi)/sqrt 2, one table
  // per (x_j, xi_j) node pair; shared by all axes since the nodes coincide.
  Eigen::MatrixXcd g(n * n, N + 1);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      const Complex w = Complex(lattice.nodes[a], -lattice.nodes[b]) / std::numbers::sqrt2;
      Index row = a * n + b;
      g(row, 0) = std::exp(-0.5 * std::norm(w));
      for (int k = 1; k <= N; ++k) g(row, k) = g(row, k - 1) * w / std::sqrt(static_cast<double>(k));
    }
  }
  StftMatrix s;
  s.lattice = lattice;
  const Index side = lattice.side();
  s.values.resize(side, side);
  const double pref = std::pow(2.0 * std::numbers::pi, -0.5 * d);
  std::vector<Index> pair(static_cast<std::size_t>(d));
  for (Index ix = 0; ix < side; ++ix) {
    for (Index ixi = 0; ixi < side; ++ixi) {
      PhasePoint pt = lattice.point(ix, ixi);
      Index rx = ix;
      Index rxi = ixi;
      for (int j = d - 1; j >= 0; --j) {
        pair[static_cast<std::size_t>(j)] = (rx % n) * n + (rxi % n);
        rx /= n;
        rxi /= n;
      }
      Complex sum{0.0, 0.0};
      if (d == 1) {
        sum = g.row(pair[0]).head(N + 1).transpose().cwiseProduct(c.values()).sum();
      } else {
        for (std::size_t i = 0; i < c.size(); ++i) {
          if (c[i] == Complex{0.0, 0.0}) continue;
          const MultiIndex& alpha = c.alpha(i);
          Complex term = c[i];
          for (int j = 0; j < d; ++j) term *= g(pair[static_cast<std::size_t>(j)], alpha[j]);
          sum += term;
        }
      }
      s.values(ix, ixi) = pref * std::exp(Complex(0.0, -0.5 * pt.x.dot(pt.xi))) * sum;
    }
  }
  return s;
}

StftMatrix sample_phase_space(const Lattice& lattice, const std::function<Complex(const PhasePoint&)>& f) {
  StftMatrix s;
  s.lattice = lattice;
  const Index side = lattice.side();
  s.values.resize(side, side);
  for (Index ix = 0; ix < side; ++ix) {
    for (Index ixi = 0; ixi < side; ++ixi) s.values(ix, ixi) = f(lattice.point(ix, ixi));
  }
  return s;
}

Weight Weight::constant(double value) {
  if (!(value > 0.0)) throw DomainError("constant weight must be positive");
  Weight w;
  w.kind_ = Kind::kConstant;
  w.param_ = value;
  return w;
}

Weight Weight::polynomial(double r) {
  Weight w;
  w.kind_ = Kind::kPolynomial;
  w.param_ = r;
  return w;
}

Weight Weight::rotational(RadialProfile w0) {
  Weight w;
  w.kind_ = Kind::kRotational;
  w.w0_ = std::move(w0);
  return w;
}

Weight Weight::custom(std::function<double(const PhasePoint&)> f) {
  Weight w;
  w.kind_ = Kind::kCustom;
  w.f_ = std::move(f);
  return w;
}

double Weight::operator()(const PhasePoint& pt) const {
  switch (kind_) {
    case Kind::kConstant:
      return param_;
    case Kind::kPolynomial:
      return std::pow(1.0 + pt.x.squaredNorm() + pt.xi.squaredNorm(), 0.5 * param_);
    case Kind::kRotational: {
      std::vector<double> rho(static_cast<std::size_t>(pt.dim()));
      for (int j = 0; j < pt.dim(); ++j) rho[static_cast<std::size_t>(j)] = pt.x[j] * pt.x[j] + pt.xi[j] * pt.xi[j];
      return w0_(rho);
    }
    case Kind::kCustom:
      return f_(pt);
  }
  return 1.0;
}

Weight Weight::rotated(std::span<const double> rho) const {
  if (kind_ != Kind::kCustom) return *this;
  std::vector<double> r(rho.begin(), rho.end());
  auto f = f_;
  return custom([f, r](const PhasePoint& pt) { return f(phase_rotation(pt, r)); });
}

Eigen::MatrixXd weighted_modulus(const StftMatrix& s, const Weight& w) {
  Eigen::MatrixXd a = s.values.cwiseAbs();
  if (a.hasNaN()) throw DomainError("mixed_norm: NaN samples");
  if (w.kind() == Weight::Kind::kConstant) return a * w.parameter();
  for (Index ix = 0; ix < a.rows(); ++ix) {
    for (Index ixi = 0; ixi < a.cols(); ++ixi) {
      double v = w(s.lattice.point(ix, ixi));
      if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("mixed_norm: weight not positive and finite on the lattice");
      a(ix, ixi) *= v;
    }
  }
  return a;
}

double mixed_norm(const StftMatrix& s, const MixedNormSpec& spec) {
  if (!(spec.p > 0.0) || !(spec.q > 0.0)) throw DomainError("mixed_norm: exponents must be positive");
  const double cell = std::pow(s.lattice.spacing(), s.lattice.dim);
  return mixed_lebesgue_norm(weighted_modulus(s, spec.weight), spec.p, spec.q, spec.flavor, cell);
}

RotatedSamples rotate_samples(const StftMatrix& s, std::span<const double> rho) {
  const Lattice& lat = s.lattice;
  if (static_cast<int>(rho.size()) != lat.dim) throw DomainError("rotate_samples: order dimension mismatch");
  const int d = lat.dim;
  const Index n = lat.axis_size();
  const double lo = lat.nodes[0];
  const double h = lat.spacing();
  const Index side = lat.side();

  RotatedSamples out;
  out.samples.lattice = lat;
  out.samples.window = s.window;
  out.samples.values = Eigen::MatrixXcd::Zero(side, side);

  // 2d coordinates ordered (x_1..x_d, xi_1..xi_d).
  std::vector<Index> cell(static_cast<std::size_t>(2 * d));
  std::vector<double> frac(static_cast<std::size_t>(2 * d));
  const int corners = 1 << (2 * d);
  for (Index ix = 0; ix < side; ++ix) {
    for (Index ixi = 0; ixi < side; ++ixi) {
      PhasePoint src = phase_rotation(lat.point(ix, ixi), rho);
      bool inside = true;
      for (int k = 0; k < 2 * d && inside; ++k) {
        double v = k < d ? src.x[k] : src.xi[k - d];
        double t = (v - lo) / h;
        if (t < -1e-9 || t > static_cast<double>(n - 1) + 1e-9) {
          inside = false;
          break;
        }
        t = std::clamp(t, 0.0, static_cast<double>(n - 1));
        Index i0 = std::min(static_cast<Index>(std::floor(t)), n - 2);
        cell[static_cast<std::size_t>(k)] = i0;
        frac[static_cast<std::size_t>(k)] = t - static_cast<double>(i0);
      }
      if (!inside) continue;
      Complex v{0.0, 0.0};
      for (int corner = 0; corner < corners; ++corner) {
        double wgt = 1.0;
        Index rx = 0;
        Index rxi = 0;
        for (int k = 0; k < 2 * d; ++k) {
          int bit = (corner >> k) & 1;
          double f = frac[static_cast<std::size_t>(k)];
          wgt *= bit != 0 ? f : 1.0 - f;
          Index node = cell[static_cast<std::size_t>(k)] + bit;
          if (k < d) {
            rx = rx * n + node;
          } else {
            rxi = rxi * n + node;
          }
        }
        if (wgt != 0.0) v += wgt * s.values(rx, rxi);
      }
      out.samples.values(ix, ixi) = v;
    }
  }

  double peak = s.values.cwiseAbs().maxCoeff();
  double edge = 0.0;
  for (Index ix = 0; ix < side; ++ix) {
    for (Index ixi = 0; ixi < side; ++ixi) {
      PhasePoint pt = lat.point(ix, ixi);
      double m = std::max(pt.x.cwiseAbs().maxCoeff(), pt.xi.cwiseAbs().maxCoeff());
      if (m >= lat.half_width() - 0.5 * h) edge = std::max(edge, std::abs(s.values(ix, ixi)));
    }
  }
  out.edge_fraction = peak > 0.0 ? edge / peak : 0.0;
  return out;
}

RotatedSamples rotate_samples(const StftMatrix& s, double rho) {
  std::vector<double> r(static_cast<std::size_t>(s.lattice.dim), rho);
  return rotate_samples(s, r);
}

namespace {

bool is_integer_with_parity(double rho, int parity) {
  double k = std::round(rho);
  if (std::abs(rho - k) > 1e-12) return false;
  long m = static_cast<long>(k);
  return ((m % 2) + 2) % 2 == parity;
}

void check_exponents(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) throw DomainError("exponents must be positive");
  if (q > p) throw DomainError("estimate requires q <= p");
}

}  // namespace

MinkowskiReport verify_minkowski(const StftMatrix& s, double p, double q, double rho, MinkowskiForm form) {
  check_exponents(p, q);
  const int d = s.lattice.dim;
  const double theta = 0.5 * std::numbers::pi * rho;
  double trig = 0.0;
  if (form == MinkowskiForm::kSine) {
    if (is_integer_with_parity(rho, 0)) throw DomainError("sine form requires rho outside 2Z");
    trig = std::abs(std::sin(theta));
  } else {
    if (is_integer_with_parity(rho, 1)) throw DomainError("cosine form requires rho outside 2Z+1");
    trig = std::abs(std::cos(theta));
  }
  const double expo = d * ((std::isinf(p) ? 0.0 : 1.0 / p) - 1.0 / q);
  const double cell = std::pow(s.lattice.spacing(), d);
  Eigen::MatrixXd a = s.values.cwiseAbs();
  Eigen::MatrixXd t = rotate_samples(s, rho).samples.values.cwiseAbs();

  MinkowskiReport r;
  if (form == MinkowskiForm::kSine) {
    r.lhs = mixed_lebesgue_norm(t, q, p, NormFlavor::kM, cell);
  } else {
    r.lhs = mixed_lebesgue_norm(t, p, q, NormFlavor::kW, cell);
  }
  r.rhs = std::pow(trig, expo) * mixed_lebesgue_norm(a, p, q, NormFlavor::kM, cell);
  r.pass = r.lhs <= r.rhs * (1.0 + kMinkowskiSlack);
  return r;
}

EstimateReport verify_frft_mod_estimate(const HermiteCoeffs& c, std::span<const double> rho, double p, double q,
                                        const Weight& w, EstimateDirection dir, const Lattice& lattice) {
  check_exponents(p, q);
  if (static_cast<int>(rho.size()) != c.dim()) throw DomainError("order dimension does not match coefficients");
  const bool sine = dir == EstimateDirection::kMtoM || dir == EstimateDirection::kWtoW;
  const double expo = (std::isinf(p) ? 0.0 : 1.0 / p) - 1.0 / q;
  double factor = 1.0;
  for (double r : rho) {
    if (sine && is_integer_with_parity(r, 0)) throw DomainError("sine-form estimate requires rho_j outside 2Z");
    if (!sine && is_integer_with_parity(r, 1)) throw DomainError("cosine-form estimate requires rho_j outside 2Z+1");
    const double theta = 0.5 * std::numbers::pi * r;
    factor *= std::pow(std::abs(sine ? std::sin(theta) : std::cos(theta)), expo);
  }

  Eigen::VectorXcd rv(static_cast<Index>(rho.size()));
  for (std::size_t j = 0; j < rho.size(); ++j) rv[static_cast<Index>(j)] = rho[j];
  StftMatrix src = stft_matrix(c, lattice);
  StftMatrix dst = stft_matrix(spectral_frft(c, FracOrder(rv)), lattice);
  Weight wr = w.rotated(rho);

  MixedNormSpec s_spec{p, q, NormFlavor::kM, w};
  MixedNormSpec t_spec{q, p, NormFlavor::kM, wr};
  switch (dir) {
    case EstimateDirection::kMtoM:
      break;
    case EstimateDirection::kWtoW:
      s_spec = {q, p, NormFlavor::kW, w};
      t_spec = {p, q, NormFlavor::kW, wr};
      break;
    case EstimateDirection::kMtoW:
      t_spec = {p, q, NormFlavor::kW, wr};
      break;
    case EstimateDirection::kWtoM:
      s_spec = {q, p, NormFlavor::kW, w};
      t_spec = {q, p, NormFlavor::kM, wr};
      break;
  }
  EstimateReport r;
  r.lhs = mixed_norm(dst, t_spec);
  r.source = mixed_norm(src, s_spec);
  r.factor = factor;
  r.rhs = factor * r.source;
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : kInf;
  return r;
}

namespace {

std::shared_ptr<const QuadratureRule> laguerre_cached(int n, int a) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const QuadratureRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, a}];
  if (!slot) slot = std::make_shared<const QuadratureRule>(gauss_laguerre_rule(n, a));
  return slot;
}

}  // namespace

double nu_omega(const RadialProfile& w0, const MultiIndex& alpha) {
  const int d = alpha.dim();
  // 64 nodes per axis, fewer in higher dimension to keep the tensor rule small.
  const int n = d <= 2 ? 64 : 24;
  std::vector<std::shared_ptr<const QuadratureRule>> rules;
  for (int j = 0; j < d; ++j) rules.push_back(laguerre_cached(n, alpha[j]));

  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  std::vector<double> r(static_cast<std::size_t>(d));
  double total = 0.0;
  double tail = 0.0;  // contributions with some node in the top eighth
  const int tail_start = n - n / 8;
  while (true) {
    double wgt = 1.0;
    bool in_tail = false;
    for (int j = 0; j < d; ++j) {
      const auto& rule = *rules[static_cast<std::size_t>(j)];
      int k = idx[static_cast<std::size_t>(j)];
      r[static_cast<std::size_t>(j)] = rule.nodes[k];
      wgt *= rule.weights[k];
      in_tail = in_tail || k >= tail_start;
    }
    double v = w0(r);
    double term = wgt * v * v;
    if (!std::isfinite(term)) throw NumericError("nu_omega: weight profile overflows at a quadrature node");
    total += term;
    if (in_tail) tail += term;
    int j = d - 1;
    while (j >= 0 && ++idx[static_cast<std::size_t>(j)] == n) idx[static_cast<std::size_t>(j--)] = 0;
    if (j < 0) break;
  }
  if (!(total > 0.0)) throw NumericError("nu_omega: weight profile must be positive");
  if (tail > 1e-6 * total) {
    throw NumericError("nu_omega: quadrature tail carries a non-negligible share; the integral appears divergent");
  }
  return std::sqrt(total);
}

double hilbert_mod_norm(const HermiteCoeffs& c, const RadialProfile& w0) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == Complex{0.0, 0.0}) continue;
    s += std::norm(c[i] * nu_omega(w0, c.alpha(i)));
  }
  return std::sqrt(s);
}

double fitted_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("fitted_slope: need at least two paired samples");
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw DomainError("fitted_slope: abscissae are all equal");
  return sxy / sxx;
}

}  // namespace osc
