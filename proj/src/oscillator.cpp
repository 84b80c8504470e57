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

#include "oscitool/oscillator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "oscitool/errors.hpp"

namespace osc {
namespace {

Complex integer_power(Complex base, long k) {
  bool invert = k < 0;
  unsigned long n = static_cast<unsigned long>(invert ? -k : k);
  Complex result{1.0, 0.0};
  Complex b = base;
  while (n != 0) {
    if ((n & 1UL) != 0) result *= b;
    n >>= 1;
    if (n != 0) b *= b;
  }
  return invert ? Complex{1.0, 0.0} / result : result;
}

Complex power(Complex base, double r) {
  if (r == 0.0) return {1.0, 0.0};
  if (r == 1.0) return base;
  if (r == std::round(r) && std::abs(r) <= 64.0) {
    return integer_power(base, static_cast<long>(r));
  }
  if (base == Complex{0.0, 0.0}) return {0.0, 0.0};
  return std::exp(r * std::log(base));
}

// c * exp(e), with the product formed in log space when exp(e) alone overflows.
Complex scaled_exp(Complex c, Complex e) {
  if (c == Complex{0.0, 0.0}) return c;
  if (e.real() < 700.0) return c * std::exp(e);
  return std::exp(e + std::log(c));
}

}  // namespace

bool PropagatorSpec::avoids_zero_base(int trunc) const {
  const auto& idx = *SimplexIndex::get(dim(), trunc);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (eigenvalue_base(*this, idx[i]) == Complex{0.0, 0.0}) return false;
  }
  return true;
}

Complex eigenvalue_base(const PropagatorSpec& spec, const MultiIndex& alpha) {
  if (alpha.dim() != spec.dim()) throw DomainError("eigenvalue: dimension mismatch");
  Complex b = spec.c;
  for (int j = 0; j < spec.dim(); ++j) {
    b += spec.rho[j] * static_cast<double>(2 * alpha[j] + 1);
  }
  return b;
}

Complex eigenvalue(const PropagatorSpec& spec, const MultiIndex& alpha) {
  Complex b = eigenvalue_base(spec, alpha);
  if (spec.r < 0.0 && b == Complex{0.0, 0.0}) {
    throw DomainError("eigenvalue: zero base 2<alpha,rho> + sum(rho) + c with negative power r");
  }
  return power(b, spec.r);
}

HermiteCoeffs apply_power(const HermiteCoeffs& c, const PropagatorSpec& spec) {
  HermiteCoeffs out = c;
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] * eigenvalue(spec, c.alpha(i));
  return out;
}

HermiteCoeffs apply_propagator(const HermiteCoeffs& c, const PropagatorSpec& spec) {
  HermiteCoeffs out = c;
  for (std::size_t i = 0; i < c.size(); ++i) {
    out[i] = scaled_exp(c[i], spec.zeta * eigenvalue(spec, c.alpha(i)));
  }
  return out;
}

std::vector<std::size_t> overflow_indices(const HermiteCoeffs& c) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!std::isfinite(c[i].real()) || !std::isfinite(c[i].imag())) out.push_back(i);
  }
  return out;
}

HermiteCoeffs witness_sequence(WitnessKind kind, int dim, int N, double s) {
  if (N < 1) throw DomainError("witness_sequence: N must be >= 1");
  if (kind == WitnessKind::kBeurling && !(s > 0.0)) {
    throw DomainError("witness_sequence: Beurling witness needs s > 0");
  }
  HermiteCoeffs out(dim, N);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double n = out.alpha(i).order();
    double v = 0.0;
    if (kind == WitnessKind::kSchwartzLog2) {
      double l = std::log1p(n);
      v = std::exp(-l * l);
    } else {
      v = std::exp(-std::pow(1.0 + n, 1.0 / (2.0 * s)));
    }
    out[i] = v;
  }
  return out;
}

std::string to_string(GrowthTag tag) {
  switch (tag) {
    case GrowthTag::kHs: return "H_s";
    case GrowthTag::kH0s: return "H0_s";
    case GrowthTag::kFlat: return "Flat";
    case GrowthTag::kSchwartz: return "Schwartz";
    case GrowthTag::kTempered: return "Tempered";
    case GrowthTag::kBeyond: return "Beyond";
  }
  return "unknown";
}

std::string to_string(Continuity c) {
  switch (c) {
    case Continuity::kHomeomorphism: return "homeomorphism";
    case Continuity::kContinuous: return "continuous";
    case Continuity::kDiscontinuous: return "discontinuous";
    case Continuity::kNotCovered: return "not covered";
  }
  return "unknown";
}

namespace {

struct Envelope {
  std::vector<double> n;
  std::vector<double> y;  // log max_{|alpha| = n} |c(alpha)|, +inf for overflowed orders
};

Envelope envelope(const HermiteCoeffs& c) {
  Envelope e;
  const auto& idx = c.index();
  for (int n = 0; n <= c.trunc(); ++n) {
    double m = 0.0;
    for (std::size_t i = idx.order_begin(n); i < idx.order_begin(n + 1); ++i) {
      double a = std::abs(c[i]);
      if (std::isnan(a)) a = std::numeric_limits<double>::infinity();
      m = std::max(m, a);
    }
    if (m > 0.0) {
      e.n.push_back(n);
      e.y.push_back(std::log(m));
    }
  }
  return e;
}

struct Fit {
  Eigen::VectorXd coef;
  double residual = std::numeric_limits<double>::infinity();
  double beta = 0.0;
};

using Basis = std::function<Eigen::RowVectorXd(double)>;

Fit least_squares(const std::vector<double>& n, const std::vector<double>& y, const Basis& basis) {
  auto m = static_cast<Eigen::Index>(n.size());
  Eigen::Index k = basis(n[0]).size();
  Eigen::MatrixXd a(m, k);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    a.row(i) = basis(n[static_cast<std::size_t>(i)]);
    b[i] = y[static_cast<std::size_t>(i)];
  }
  // Column scaling keeps log n! and n^beta columns comparable.
  Eigen::VectorXd scale = a.colwise().norm().transpose().cwiseMax(1e-300);
  Eigen::MatrixXd as = a * scale.cwiseInverse().asDiagonal();
  Eigen::VectorXd x = as.colPivHouseholderQr().solve(b);
  Fit f;
  f.coef = x.cwiseQuotient(scale);
  Eigen::VectorXd res = a * f.coef - b;
  double range = b.maxCoeff() - b.minCoeff();
  double rms = std::sqrt(res.squaredNorm() / static_cast<double>(m));
  f.residual = range > 0.0 ? rms / range : (rms == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  return f;
}

enum Model { kPoly, kLogQuad, kStretched, kFactorial, kModelCount };

Basis basis_for(Model m, double beta = 1.0) {
  switch (m) {
    case kPoly:
      return [](double n) {
        Eigen::RowVectorXd r(2);
        r << 1.0, 0.5 * std::log1p(n * n);
        return r;
      };
    case kLogQuad:
      return [](double n) {
        double l = std::log1p(n);
        Eigen::RowVectorXd r(3);
        r << 1.0, l, l * l;
        return r;
      };
    case kStretched:
      return [beta](double n) {
        Eigen::RowVectorXd r(2);
        r << 1.0, std::pow(n, beta);
        return r;
      };
    case kFactorial:
    default:
      return [](double n) {
        Eigen::RowVectorXd r(3);
        r << 1.0, n, std::lgamma(n + 1.0);
        return r;
      };
  }
}

Fit fit_model(Model m, const std::vector<double>& n, const std::vector<double>& y) {
  if (m != kStretched) return least_squares(n, y, basis_for(m));
  // One-dimensional search over the exponent beta, then golden refinement.
  auto eval = [&](double beta) {
    Fit f = least_squares(n, y, basis_for(kStretched, beta));
    f.beta = beta;
    return f;
  };
  Fit best;
  for (double beta = 0.05; beta <= 3.0 + 1e-12; beta += 0.05) {
    Fit f = eval(beta);
    if (f.residual < best.residual) best = f;
  }
  double lo = std::max(0.01, best.beta - 0.05);
  double hi = best.beta + 0.05;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - g * (hi - lo);
  double b = lo + g * (hi - lo);
  Fit fa = eval(a);
  Fit fb = eval(b);
  for (int it = 0; it < 60; ++it) {
    if (fa.residual < fb.residual) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - g * (hi - lo);
      fa = eval(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + g * (hi - lo);
      fb = eval(b);
    }
  }
  Fit refined = fa.residual < fb.residual ? fa : fb;
  return refined.residual < best.residual ? refined : best;
}

std::pair<std::vector<double>, std::vector<double>> window(const Envelope& e, double from) {
  std::vector<double> n;
  std::vector<double> y;
  for (std::size_t i = 0; i < e.n.size(); ++i) {
    if (e.n[i] >= from) {
      n.push_back(e.n[i]);
      y.push_back(e.y[i]);
    }
  }
  return {n, y};
}

GrowthClass tag_from(Model m, const Fit& f) {
  GrowthClass out;
  out.residual = f.residual;
  switch (m) {
    case kPoly:
      out.tag = GrowthTag::kTempered;
      out.parameter = f.coef[1];
      break;
    case kLogQuad:
      // Negative curvature in log n: decay faster than every power.
      out.tag = f.coef[2] < 0.0 ? GrowthTag::kSchwartz : GrowthTag::kBeyond;
      out.parameter = -f.coef[2];
      break;
    case kStretched:
      if (f.coef[1] < 0.0) {
        out.tag = GrowthTag::kHs;
        out.parameter = 1.0 / (2.0 * f.beta);
      } else {
        out.tag = GrowthTag::kBeyond;
        out.parameter = f.beta;
      }
      break;
    default:
      if (f.coef[2] < 0.0) {
        out.tag = GrowthTag::kFlat;
        out.parameter = 1.0 / (-2.0 * f.coef[2]);
      } else {
        out.tag = GrowthTag::kBeyond;
        out.parameter = f.coef[2];
      }
      break;
  }
  out.accepted = out.residual <= kClassifierThreshold;
  return out;
}

}  // namespace

GrowthClass classify_growth(const HermiteCoeffs& c) {
  Envelope e = envelope(c);
  if (e.n.empty()) throw DomainError("classify_growth: all coefficients vanish; nothing to classify");
  for (double v : e.y) {
    if (!std::isfinite(v)) {
      GrowthClass out;
      out.tag = GrowthTag::kBeyond;
      out.parameter = std::numeric_limits<double>::infinity();
      out.accepted = true;
      return out;
    }
  }
  const double N = c.trunc();
  auto [n, y] = window(e, std::max(1.0, std::floor(N / 8.0)));
  if (n.size() < 5) throw DomainError("classify_growth: fewer than 5 nonzero orders in the fit window");

  std::array<Fit, kModelCount> fits;
  double best = std::numeric_limits<double>::infinity();
  for (int m = 0; m < kModelCount; ++m) {
    fits[static_cast<std::size_t>(m)] = fit_model(static_cast<Model>(m), n, y);
    best = std::min(best, fits[static_cast<std::size_t>(m)].residual);
  }
  Model chosen = kFactorial;
  for (int m = 0; m < kModelCount; ++m) {
    if (fits[static_cast<std::size_t>(m)].residual <= 1.5 * best + 1e-6) {
      chosen = static_cast<Model>(m);
      break;
    }
  }
  GrowthClass out = tag_from(chosen, fits[static_cast<std::size_t>(chosen)]);

  // Parameter from the asymptotic half of the range when it still carries enough points.
  auto [na, ya] = window(e, std::floor(N / 2.0));
  if (na.size() >= 5) {
    GrowthClass tail = tag_from(chosen, fit_model(chosen, na, ya));
    if (tail.tag == out.tag) out.parameter = tail.parameter;
  }
  return out;
}

bool escapes_polynomial_bound(const HermiteCoeffs& c, double exponent) {
  Envelope e = envelope(c);
  auto [n, y] = window(e, std::floor(c.trunc() / 2.0));
  if (n.size() < 2) return false;
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n.size(); ++i) {
    double v = y[i] - exponent * 0.5 * std::log1p(n[i] * n[i]);
    if (!(v > prev)) return false;
    prev = v;
  }
  return true;
}

Continuity classify_continuity(const PropagatorSpec& spec, const FunctionSpace& space) {
  constexpr double kTol = 1e-12;
  if (spec.r == 0.0) return Continuity::kHomeomorphism;  // scalar multiple e^zeta
  if (spec.r < 0.0) return Continuity::kNotCovered;

  bool all_imaginary = true;
  bool all_positive = true;
  for (int j = 0; j < spec.dim(); ++j) {
    Complex v = spec.zeta * power(spec.rho[j], spec.r);
    double scale = std::max(1.0, std::abs(v));
    if (std::abs(v.real()) > kTol * scale) all_imaginary = false;
    if (!(v.real() > kTol * scale)) all_positive = false;
  }
  if (all_imaginary) return Continuity::kHomeomorphism;

  const double crit = 1.0 / (2.0 * spec.r);
  const double stol = kTol * std::max(1.0, crit);
  switch (space.kind) {
    case SpaceKind::kH0s:
    case SpaceKind::kH0sDual:
      if (space.s <= crit + stol) return Continuity::kHomeomorphism;
      return all_positive ? Continuity::kDiscontinuous : Continuity::kNotCovered;
    case SpaceKind::kHs:
    case SpaceKind::kHsDual:
      if (space.s < crit - stol) return Continuity::kHomeomorphism;
      return all_positive ? Continuity::kDiscontinuous : Continuity::kNotCovered;
    case SpaceKind::kSchwartz:
    case SpaceKind::kTempered:
      return all_positive ? Continuity::kDiscontinuous : Continuity::kNotCovered;
  }
  return Continuity::kNotCovered;
}

}  // namespace osc
