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

#include "oscitool/strichartz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oscitool/errors.hpp"
#include "oscitool/quadrature.hpp"

namespace osc {

using Eigen::Index;

namespace {

constexpr double kGradingRatio = 0.15;

bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

double conjugate(double p) {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return kInf;
  return p / (p - 1.0);
}

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

}  // namespace

TimeGrid TimeGrid::uniform(double T, int intervals) {
  if (!(T > 0.0)) throw DomainError("time horizon T must be positive");
  if (intervals < 1) throw DomainError("time grid needs at least one interval");
  TimeGrid g;
  g.T = T;
  g.breakpoints = Eigen::VectorXd::LinSpaced(intervals + 1, 0.0, T);
  g.nodes = g.breakpoints;
  const double h = T / intervals;
  g.weights = Eigen::VectorXd::Constant(intervals + 1, h);
  g.weights[0] = g.weights[intervals] = 0.5 * h;
  return g;
}

TimeGrid TimeGrid::graded(double T, std::span<const double> singular, int panels, int levels, int order) {
  if (!(T > 0.0)) throw DomainError("time horizon T must be positive");
  if (panels < 1 || levels < 0 || order < 1) throw DomainError("graded grid: bad panel parameters");
  std::vector<double> sing;
  for (double s : singular) {
    if (s >= 0.0 && s <= T) sing.push_back(s);
  }
  std::vector<double> base;
  for (int k = 0; k <= panels; ++k) base.push_back(T * k / panels);
  base.insert(base.end(), sing.begin(), sing.end());
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end(), [](double a, double b) { return near(a, b); }), base.end());

  auto is_singular = [&](double x) {
    return std::any_of(sing.begin(), sing.end(), [&](double s) { return near(x, s); });
  };
  std::vector<double> bp{base.front()};
  for (std::size_t i = 0; i + 1 < base.size(); ++i) {
    double a = base[i];
    double b = base[i + 1];
    bool sa = is_singular(a);
    bool sb = is_singular(b);
    std::vector<double> inner;
    auto grade = [&](double from, double to) {
      // points from + (to - from) sigma^k, k = 1..levels, stopping before
      // the panels drop below the resolution of doubles near `from`
      const double floor_width = 1e-12 * std::abs(from);
      double f = 1.0;
      for (int k = 1; k <= levels; ++k) {
        f *= kGradingRatio;
        if (std::abs(to - from) * f < floor_width) break;
        inner.push_back(from + (to - from) * f);
      }
    };
    if (sa && sb) {
      double m = 0.5 * (a + b);
      grade(a, m);
      inner.push_back(m);
      grade(b, m);
    } else if (sa) {
      grade(a, b);
    } else if (sb) {
      grade(b, a);
    }
    std::sort(inner.begin(), inner.end());
    bp.insert(bp.end(), inner.begin(), inner.end());
    bp.push_back(b);
  }

  TimeGrid g;
  g.T = T;
  g.breakpoints = Eigen::Map<Eigen::VectorXd>(bp.data(), static_cast<Index>(bp.size()));
  const QuadratureRule ref = gauss_legendre_rule(order);
  const Index panels_total = g.breakpoints.size() - 1;
  g.nodes.resize(panels_total * order);
  g.weights.resize(panels_total * order);
  for (Index i = 0; i < panels_total; ++i) {
    const double a = g.breakpoints[i];
    const double half = 0.5 * (g.breakpoints[i + 1] - a);
    for (int k = 0; k < order; ++k) {
      g.nodes[i * order + k] = a + half * (ref.nodes[k] + 1.0);
      g.weights[i * order + k] = half * ref.weights[k];
    }
  }
  return g;
}

TimeSlices evolve_E(const HermiteCoeffs& u0, const TimeGrid& grid, const PropagatorSpec& h) {
  TimeSlices out;
  out.grid = grid;
  std::vector<Complex> lambda(u0.size());
  for (std::size_t i = 0; i < u0.size(); ++i) lambda[i] = eigenvalue(h, u0.alpha(i));
  for (Index k = 0; k < grid.size(); ++k) {
    HermiteCoeffs u = u0;
    const double t = grid.nodes[k];
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (t != 0.0) u[i] *= std::exp(Complex(0.0, -t) * lambda[i]);
    }
    out.states.push_back(std::move(u));
  }
  return out;
}

TimeSlices sample_source(const std::function<HermiteCoeffs(double)>& F, const TimeGrid& grid) {
  TimeSlices out;
  out.grid = grid;
  for (Index k = 0; k < grid.size(); ++k) out.states.push_back(F(grid.nodes[k]));
  return out;
}

namespace {

// psi_k(w) = int_0^1 v^k e^{w v} dv for k = 0, 1.
std::pair<Complex, Complex> psi(Complex w) {
  if (std::abs(w) < 0.5) {
    Complex p0{0.0, 0.0};
    Complex p1{0.0, 0.0};
    Complex term{1.0, 0.0};  // w^n / n!
    for (int n = 0; n < 30; ++n) {
      p0 += term / static_cast<double>(n + 1);
      p1 += term / static_cast<double>(n + 2);
      term *= w / static_cast<double>(n + 1);
    }
    return {p0, p1};
  }
  const Complex e = std::exp(w);
  return {(e - 1.0) / w, (e * (w - 1.0) + 1.0) / (w * w)};
}

struct Extended {
  std::vector<double> s;            // 0 = s_0 < ... < s_m = T
  std::vector<Index> source;        // source slice feeding s_j
  std::vector<Index> position;      // position of grid node k in s
};

Extended extend(const TimeGrid& grid) {
  if (grid.size() == 0) throw DomainError("empty time grid");
  for (Index k = 1; k < grid.size(); ++k) {
    if (!(grid.nodes[k] > grid.nodes[k - 1])) throw DomainError("time grid nodes must increase strictly");
  }
  Extended e;
  if (grid.nodes[0] > 0.0) {
    e.s.push_back(0.0);
    e.source.push_back(0);
  }
  for (Index k = 0; k < grid.size(); ++k) {
    e.position.push_back(static_cast<Index>(e.s.size()));
    e.s.push_back(grid.nodes[k]);
    e.source.push_back(k);
  }
  if (grid.nodes[grid.size() - 1] < grid.T) {
    e.s.push_back(grid.T);
    e.source.push_back(grid.size() - 1);
  }
  return e;
}

void check_slices(const TimeSlices& F) {
  if (static_cast<Index>(F.states.size()) != F.grid.size()) {
    throw DomainError("source slice count does not match the time grid");
  }
  for (const auto& s : F.states) {
    if (s.dim() != F.states.front().dim() || s.trunc() != F.states.front().trunc()) {
      throw DomainError("source slices must share dimension and truncation");
    }
  }
}

TimeSlices duhamel_plain(const TimeSlices& F, const PropagatorSpec& h, DuhamelVariant variant) {
  check_slices(F);
  const Extended e = extend(F.grid);
  const HermiteCoeffs& shape = F.states.front();
  const std::size_t modes = shape.size();
  std::vector<Complex> lambda(modes);
  for (std::size_t i = 0; i < modes; ++i) lambda[i] = eigenvalue(h, shape.alpha(i));

  // S1 at every extended node by the one-step recursion.
  std::vector<HermiteCoeffs> s1(e.s.size(), HermiteCoeffs(shape.dim(), shape.trunc()));
  for (std::size_t j = 0; j + 1 < e.s.size(); ++j) {
    const double dt = e.s[j + 1] - e.s[j];
    const HermiteCoeffs& fa = F.states[static_cast<std::size_t>(e.source[j])];
    const HermiteCoeffs& fb = F.states[static_cast<std::size_t>(e.source[j + 1])];
    for (std::size_t i = 0; i < modes; ++i) {
      const Complex w = Complex(0.0, -dt) * lambda[i];
      auto [p0, p1] = psi(w);
      s1[j + 1][i] = std::exp(w) * s1[j][i] + dt * (fb[i] * p0 + (fa[i] - fb[i]) * p1);
    }
  }

  TimeSlices out;
  out.grid = F.grid;
  for (Index k = 0; k < F.grid.size(); ++k) {
    if (variant == DuhamelVariant::kS1) {
      out.states.push_back(s1[static_cast<std::size_t>(e.position[static_cast<std::size_t>(k)])]);
      continue;
    }
    // S2(t) = e^{i (T - t) H} S1(T)
    HermiteCoeffs v = s1.back();
    const double lag = F.grid.T - F.grid.nodes[k];
    for (std::size_t i = 0; i < modes; ++i) v[i] *= std::exp(Complex(0.0, lag) * lambda[i]);
    out.states.push_back(std::move(v));
  }
  return out;
}

double max_l2(const std::vector<HermiteCoeffs>& v) {
  double m = 0.0;
  for (const auto& c : v) m = std::max(m, c.l2_norm());
  return m;
}

}  // namespace

DuhamelResult duhamel_S(const TimeSlices& F, const PropagatorSpec& h, DuhamelVariant variant) {
  DuhamelResult r;
  r.slices = duhamel_plain(F, h, variant);
  const Index n = F.grid.size();
  if (n < 3) {
    r.refinement_gap = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  std::vector<Index> keep;
  for (Index k = 0; k < n; k += 2) keep.push_back(k);
  if (keep.back() != n - 1) keep.push_back(n - 1);
  TimeSlices coarse;
  coarse.grid = F.grid;
  coarse.grid.nodes.resize(static_cast<Index>(keep.size()));
  coarse.grid.weights = Eigen::VectorXd::Zero(static_cast<Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    coarse.grid.nodes[static_cast<Index>(j)] = F.grid.nodes[keep[j]];
    coarse.states.push_back(F.states[static_cast<std::size_t>(keep[j])]);
  }
  TimeSlices sc = duhamel_plain(coarse, h, variant);
  double gap = 0.0;
  for (std::size_t j = 0; j < keep.size(); ++j) {
    const auto& fine = r.slices.states[static_cast<std::size_t>(keep[j])];
    gap = std::max(gap, (fine.values() - sc.states[j].values()).norm());
  }
  const double scale = max_l2(r.slices.states);
  r.refinement_gap = scale > 0.0 ? gap / scale : 0.0;
  return r;
}

HermiteCoeffs adjoint_E(const TimeSlices& F, const PropagatorSpec& h) {
  check_slices(F);
  const Extended e = extend(F.grid);
  const HermiteCoeffs& shape = F.states.front();
  HermiteCoeffs out(shape.dim(), shape.trunc());
  for (std::size_t i = 0; i < shape.size(); ++i) {
    const Complex lambda = eigenvalue(h, shape.alpha(i));
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j + 1 < e.s.size(); ++j) {
      const double a = e.s[j];
      const double dt = e.s[j + 1] - a;
      const Complex fa = F.states[static_cast<std::size_t>(e.source[j])][i];
      const Complex fb = F.states[static_cast<std::size_t>(e.source[j + 1])][i];
      auto [p0, p1] = psi(Complex(0.0, dt) * lambda);
      acc += std::exp(Complex(0.0, a) * lambda) * dt * (fa * p0 + (fb - fa) * p1);
    }
    out[i] = acc;
  }
  return out;
}

double duhamel_residual(const HermiteCoeffs& u0, const std::function<HermiteCoeffs(double)>& F,
                        const PropagatorSpec& h, double T, int intervals) {
  if (intervals < 2) throw DomainError("duhamel_residual needs at least two intervals");
  const TimeGrid grid = TimeGrid::uniform(T, intervals);
  const TimeSlices src = sample_source(F, grid);
  const TimeSlices e = evolve_E(u0, grid, h);
  const TimeSlices s1 = duhamel_plain(src, h, DuhamelVariant::kS1);
  std::vector<Eigen::VectorXcd> u;
  for (Index k = 0; k < grid.size(); ++k) {
    const auto kk = static_cast<std::size_t>(k);
    u.push_back(e.states[kk].values() - Complex(0.0, 1.0) * s1.states[kk].values());
  }
  Eigen::VectorXcd lambda(static_cast<Index>(u0.size()));
  for (std::size_t i = 0; i < u0.size(); ++i) lambda[static_cast<Index>(i)] = eigenvalue(h, u0.alpha(i));
  const double dt = T / intervals;
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < u.size(); ++k) {
    Eigen::VectorXcd r = Complex(0.0, 1.0) * (u[k + 1] - u[k - 1]) / (2.0 * dt) - lambda.cwiseProduct(u[k]) -
                         src.states[k].values();
    worst = std::max(worst, r.norm());
  }
  return worst;
}

double time_norm(const Trajectory& g, double r0, bool weak) {
  if (!(r0 > 0.0)) throw DomainError("time exponent r0 must be positive");
  if (g.values.size() != g.grid.weights.size()) throw DomainError("trajectory does not match its grid");
  if (g.values.size() == 0) return 0.0;
  if ((g.values.array() < 0.0).any() || g.values.hasNaN()) {
    throw DomainError("time_norm: trajectory must be nonnegative");
  }
  if (std::isinf(r0)) return g.values.maxCoeff();
  if (!weak) {
    const double m = g.values.maxCoeff();
    if (m == 0.0) return 0.0;
    double s = 0.0;
    for (Index k = 0; k < g.values.size(); ++k) s += g.grid.weights[k] * std::pow(g.values[k] / m, r0);
    return m * std::pow(s, 1.0 / r0);
  }
  std::vector<Index> order(static_cast<std::size_t>(g.values.size()));
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<Index>(k);
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return g.values[a] > g.values[b]; });
  double best = 0.0;
  double mu = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    mu += g.grid.weights[order[i]];
    const double level = g.values[order[i]];
    // evaluate once all nodes at this level are counted
    if (i + 1 < order.size() && g.values[order[i + 1]] == level) continue;
    best = std::max(best, level * std::pow(mu, 1.0 / r0));
  }
  return best;
}

std::optional<std::string> hls_violation(double p0, double q0, double r0) {
  for (double v : {p0, q0, r0}) {
    if (!(v >= 1.0)) return "exponents p0, q0, r0 must lie in [1, inf]";
  }
  if (!(q0 > 1.0)) return "q0 > 1 fails: the kernel |sin|^{-1/q0} is not integrable";
  const double lhs = inv(p0) + inv(q0);
  const double rhs = 1.0 + inv(r0);
  const bool strict = !std::isinf(q0) && (p0 == 1.0 || std::isinf(r0));
  if (lhs > rhs + 1e-12 || (strict && lhs >= rhs - 1e-12)) {
    std::ostringstream os;
    os << "1/p0 + 1/q0 " << (strict ? "<" : "<=") << " 1 + 1/r0 fails (" << lhs << " vs " << rhs << ")";
    return os.str();
  }
  return std::nullopt;
}

Trajectory hls_apply(const std::function<double(double)>& h, double q0, HlsVariant variant, HlsKernel kernel,
                     const TimeGrid& out) {
  if (!(q0 > 1.0)) throw DomainError("hls_apply: q0 must exceed 1 (the kernel is not integrable otherwise)");
  const double e = inv(q0);
  const double shift = kernel == HlsKernel::kSin ? 0.0 : 0.5 * std::numbers::pi;
  auto phi = [&](double u) {
    const double v = std::abs(kernel == HlsKernel::kSin ? std::sin(u) : std::cos(u));
    return e == 0.0 ? 1.0 : std::pow(v, -e);
  };
  Trajectory r;
  r.grid = out;
  r.values.resize(out.size());
  for (Index k = 0; k < out.size(); ++k) {
    const double t = out.nodes[k];
    const double upper = variant == HlsVariant::kFull ? out.T : t;
    if (upper <= 0.0) {
      r.values[k] = 0.0;
      continue;
    }
    // singular where t - s = shift + m pi
    std::vector<double> sing;
    const double first = std::ceil((t - shift - upper) / std::numbers::pi - 1e-12);
    for (double m = first; t - shift - m * std::numbers::pi >= -1e-12; m += 1.0) {
      sing.push_back(std::clamp(t - shift - m * std::numbers::pi, 0.0, upper));
    }
    const TimeGrid inner = TimeGrid::graded(upper, sing, 4, 14, 10);
    double acc = 0.0;
    for (Index i = 0; i < inner.size(); ++i) {
      const double s = inner.nodes[i];
      acc += inner.weights[i] * phi(t - s) * h(s);
    }
    r.values[k] = acc;
  }
  return r;
}

double hls_bound_estimate(double p0, double q0, double r0, double T, HlsVariant variant, HlsKernel kernel,
                          int level) {
  if (auto v = hls_violation(p0, q0, r0)) throw DomainError("hls_bound_estimate: " + *v);
  if (level < 0) throw DomainError("hls_bound_estimate: level must be >= 0");
  const double pi = std::numbers::pi;
  std::vector<std::function<double(double)>> family{
      [](double) { return 1.0; },
      [T](double s) { return s / T; },
      [T](double s) { return 1.0 - s / T; },
  };
  for (int k = 1; k <= 3; ++k) {
    family.push_back([T, k, pi](double s) { return 1.0 + std::cos(2.0 * pi * k * s / T); });
  }
  for (double c : {0.0, 0.5, 1.0}) {
    for (double w : {0.1, 0.3}) {
      family.push_back([T, c, w](double s) {
        const double u = (s - c * T) / (w * T);
        return std::exp(-u * u);
      });
    }
  }
  const TimeGrid out = TimeGrid::graded(T, {}, 4 << level, 0, 8);
  const TimeGrid fine = TimeGrid::graded(T, {}, 64, 0, 10);
  double best = 0.0;
  for (const auto& h : family) {
    Trajectory th = hls_apply(h, q0, variant, kernel, out);
    th.values = th.values.cwiseAbs();
    Trajectory hv{fine, Eigen::VectorXd(fine.size())};
    for (Index i = 0; i < fine.size(); ++i) hv.values[i] = std::abs(h(fine.nodes[i]));
    const double num = time_norm(th, r0, false);
    const double den = time_norm(hv, p0, false);
    if (den > 0.0) best = std::max(best, num / den);
  }
  return best;
}

std::optional<std::string> strichartz_violation(StrichartzEstimate kind, int dim, const StrichartzExponents& e) {
  const double d = dim;
  std::ostringstream os;
  auto in_unit = [](double v) { return v >= 1.0; };
  switch (kind) {
    case StrichartzEstimate::kDuhamel: {
      if (!in_unit(e.p) || !in_unit(e.q) || !in_unit(e.p0)) return "p, q, p0 must lie in [1, inf]";
      if (!(e.r0 > 0.0)) return "r0 must lie in (0, inf]";
      const double a = d * (inv(e.q) - inv(e.p));
      if (a < -1e-12) {
        os << "0 <= d(1/q - 1/p) fails (d(1/q - 1/p) = " << a << ")";
        return os.str();
      }
      if (a >= 1.0 - 1e-12) {
        os << "d(1/q - 1/p) < 1 fails (d(1/q - 1/p) = " << a << ")";
        return os.str();
      }
      const double bound = 1.0 + inv(e.r0) - inv(e.p0);
      const bool strict = e.q < e.p && (e.p0 == 1.0 || std::isinf(e.r0));
      if (a > bound + 1e-12 || (strict && a >= bound - 1e-12)) {
        os << "d(1/q - 1/p) " << (strict ? "<" : "<=") << " 1 + 1/r0 - 1/p0 fails (" << a << " vs " << bound
           << ")";
        return os.str();
      }
      return std::nullopt;
    }
    case StrichartzEstimate::kWeakType: {
      if (!(e.p > 0.0) || !(e.q > 0.0) || !(e.r0 > 0.0)) return "p, q, r0 must lie in (0, inf]";
      if (e.q > e.p) return "q <= p fails";
      const double a = d * (inv(e.q) - inv(e.p));
      if (std::abs(inv(e.r0) - a) > 1e-12) {
        os << "1/r0 = d(1/q - 1/p) fails (" << inv(e.r0) << " vs " << a << ")";
        return os.str();
      }
      return std::nullopt;
    }
    case StrichartzEstimate::kHomogeneousL2:
    case StrichartzEstimate::kInhomogeneous: {
      auto pair = [&](double p, double p0) -> std::optional<std::string> {
        if (!in_unit(p) || !in_unit(p0)) return "p, p0 must lie in [1, inf]";
        const double upper = dim == 1 ? kInf : 2.0 * d / (d - 1.0);
        if (!(p >= 2.0) || !(p < upper)) {
          os << "2 <= p < 2d/(d-1) fails (p = " << p << ")";
          return os.str();
        }
        const double lhs = d * (1.0 - 2.0 / p);
        const double rhs = 2.0 * inv(conjugate(p0));
        if (std::abs(lhs - rhs) > 1e-12) {
          os << "d(1 - 2/p) = 2/p0' fails (" << lhs << " vs " << rhs << ")";
          return os.str();
        }
        return std::nullopt;
      };
      if (auto v = pair(e.p, e.p0)) return v;
      if (kind == StrichartzEstimate::kInhomogeneous) return pair(e.p2, e.p02);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

namespace {

struct SpaceNorm {
  double p;
  double q;
  NormFlavor flavor;
};

Trajectory norm_trajectory(const TimeSlices& s, const SpaceNorm& n, const Lattice& lat) {
  Trajectory g{s.grid, Eigen::VectorXd(s.grid.size())};
  for (Index k = 0; k < s.grid.size(); ++k) {
    g.values[k] = mixed_norm(stft_matrix(s.states[static_cast<std::size_t>(k)], lat), {n.p, n.q, n.flavor});
  }
  return g;
}

double constant_source_norm(const HermiteCoeffs& u, const SpaceNorm& n, const Lattice& lat, const TimeGrid& grid,
                            double p0) {
  const double v = mixed_norm(stft_matrix(u, lat), {n.p, n.q, n.flavor});
  Trajectory g{grid, Eigen::VectorXd::Constant(grid.size(), v)};
  return time_norm(g, p0, false);
}

bool m_source(EstimateDirection d) { return d == EstimateDirection::kMtoM || d == EstimateDirection::kMtoW; }
bool m_target(EstimateDirection d) { return d == EstimateDirection::kMtoM || d == EstimateDirection::kWtoM; }

}  // namespace

StrichartzReport verify_strichartz(const StrichartzConfig& cfg, const HermiteCoeffs& u) {
  StrichartzReport r;
  if (auto v = strichartz_violation(cfg.estimate, u.dim(), cfg.exponents)) {
    r.violation = "inadmissible exponents: " + *v;
    return r;
  }
  r.admissible = true;
  const auto& e = cfg.exponents;
  const Lattice lat = Lattice::for_truncation(u.dim(), u.trunc(), cfg.lattice_points);
  const TimeGrid grid = TimeGrid::uniform(cfg.T, cfg.intervals);
  const auto flavor = [](bool m) { return m ? NormFlavor::kM : NormFlavor::kW; };

  switch (cfg.estimate) {
    case StrichartzEstimate::kDuhamel: {
      // source M^{p,q} or W^{q,p}; target M^{q,p} or W^{p,q}
      const SpaceNorm src = m_source(cfg.pairing) ? SpaceNorm{e.p, e.q, NormFlavor::kM}
                                                  : SpaceNorm{e.q, e.p, NormFlavor::kW};
      const SpaceNorm tgt = m_target(cfg.pairing) ? SpaceNorm{e.q, e.p, NormFlavor::kM}
                                                  : SpaceNorm{e.p, e.q, NormFlavor::kW};
      const TimeSlices F = sample_source([&](double) { return u; }, grid);
      const TimeSlices s = duhamel_S(F, cfg.hamiltonian, cfg.variant).slices;
      r.lhs = time_norm(norm_trajectory(s, tgt, lat), e.r0, false);
      r.rhs = constant_source_norm(u, src, lat, grid, e.p0);
      break;
    }
    case StrichartzEstimate::kWeakType: {
      const TimeSlices s = evolve_E(u, grid, cfg.hamiltonian);
      const Trajectory gm = norm_trajectory(s, {e.q, e.p, NormFlavor::kM}, lat);
      const Trajectory gw = norm_trajectory(s, {e.p, e.q, NormFlavor::kW}, lat);
      r.lhs = time_norm(gm, e.r0, true) + time_norm(gw, e.r0, true);
      r.lhs_strong = time_norm(gm, e.r0, false) + time_norm(gw, e.r0, false);
      const StftMatrix s0 = stft_matrix(u, lat);
      r.rhs = std::min(mixed_norm(s0, {e.p, e.q, NormFlavor::kM}), mixed_norm(s0, {e.q, e.p, NormFlavor::kW}));
      break;
    }
    case StrichartzEstimate::kHomogeneousL2: {
      const double pc = conjugate(e.p);
      const SpaceNorm tgt = m_target(cfg.pairing) ? SpaceNorm{pc, e.p, NormFlavor::kM}
                                                  : SpaceNorm{e.p, pc, NormFlavor::kW};
      const TimeSlices s = evolve_E(u, grid, cfg.hamiltonian);
      r.lhs = time_norm(norm_trajectory(s, tgt, lat), conjugate(e.p0), false);
      r.rhs = u.l2_norm();
      break;
    }
    case StrichartzEstimate::kInhomogeneous: {
      const double p1c = conjugate(e.p);
      const double p2c = conjugate(e.p2);
      const SpaceNorm src = m_source(cfg.pairing) ? SpaceNorm{e.p, p1c, NormFlavor::kM}
                                                  : SpaceNorm{p1c, e.p, NormFlavor::kW};
      const SpaceNorm tgt = m_target(cfg.pairing) ? SpaceNorm{p2c, e.p2, flavor(true)}
                                                  : SpaceNorm{e.p2, p2c, flavor(false)};
      const TimeSlices F = sample_source([&](double) { return u; }, grid);
      const TimeSlices s = duhamel_S(F, cfg.hamiltonian, DuhamelVariant::kS2).slices;
      r.lhs = time_norm(norm_trajectory(s, tgt, lat), conjugate(e.p02), false);
      r.rhs = constant_source_norm(u, src, lat, grid, e.p);
      break;
    }
  }
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : kInf;
  return r;
}

StrichartzSweep sweep_strichartz(const StrichartzConfig& cfg, std::uint64_t seed) {
  const int d = cfg.hamiltonian.dim();
  if (d < 1) throw DomainError("sweep_strichartz: hamiltonian rho must be set");
  constexpr int kTrunc = 8;
  std::vector<HermiteCoeffs> inputs;
  const auto& idx = *SimplexIndex::get(d, kTrunc);
  for (std::size_t i = 0; i < 9 && i < idx.size(); ++i) {
    // h_0 .. h_8 along the first axis
    std::vector<int> a(static_cast<std::size_t>(d), 0);
    a[0] = static_cast<int>(i);
    inputs.push_back(HermiteCoeffs::unit(d, kTrunc, MultiIndex(a)));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int k = 0; k < 20; ++k) {
    HermiteCoeffs c(d, kTrunc);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = Complex(normal(rng), normal(rng));
    c.values() /= c.l2_norm();
    inputs.push_back(std::move(c));
  }
  StrichartzSweep out;
  for (const auto& u : inputs) {
    out.reports.push_back(verify_strichartz(cfg, u));
    if (!out.reports.back().admissible) return out;
    out.max_ratio = std::max(out.max_ratio, out.reports.back().ratio);
  }
  return out;
}

double strichartz_refinement_change(const StrichartzConfig& cfg, const HermiteCoeffs& u) {
  StrichartzConfig fine = cfg;
  fine.intervals = 2 * cfg.intervals;
  fine.lattice_points = 2 * cfg.lattice_points - 1;
  const StrichartzReport a = verify_strichartz(cfg, u);
  if (!a.admissible) throw DomainError(a.violation);
  const StrichartzReport b = verify_strichartz(fine, u);
  return std::abs(b.ratio - a.ratio) / std::abs(b.ratio);
}

}  // namespace osc
