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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oscitool/hermite.hpp"
#include "oscitool/modspace.hpp"
#include "oscitool/oscillator.hpp"

namespace osc {

/// Quadrature on [0, T]. `breakpoints` partition the interval; `nodes` and
/// `weights` are the composite rule (the breakpoints themselves for the
/// trapezoid kind, interior Gauss-Legendre nodes for the graded kind).
struct TimeGrid {
  double T = 0.0;
  Eigen::VectorXd breakpoints;
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  /// Uniform breakpoints, trapezoid weights, nodes at the breakpoints.
  static TimeGrid uniform(double T, int intervals);

  /// Composite Gauss-Legendre with `order` nodes per panel on `panels`
  /// uniform panels, each panel next to a point of `singular` split
  /// geometrically (ratio 0.15, `levels` times) toward that point.
  static TimeGrid graded(double T, std::span<const double> singular, int panels = 8, int levels = 30,
                         int order = 8);

  [[nodiscard]] Eigen::Index size() const { return nodes.size(); }
};

/// States u(t_k) at the nodes of a grid.
struct TimeSlices {
  TimeGrid grid;
  std::vector<HermiteCoeffs> states;
};

/// Scalar trajectory g(t_k), e.g. a norm along a solution.
struct Trajectory {
  TimeGrid grid;
  Eigen::VectorXd values;
};

/// u(t) = e^{-it H^r_{x,rho,c}} u0 at every node; h.zeta is ignored.
TimeSlices evolve_E(const HermiteCoeffs& u0, const TimeGrid& grid, const PropagatorSpec& h);

/// Samples F(t_k) of a time-dependent source.
TimeSlices sample_source(const std::function<HermiteCoeffs(double)>& F, const TimeGrid& grid);

enum class DuhamelVariant {
  kS1,  ///< integral over [0, t]
  kS2,  ///< integral over [0, T]
};

struct DuhamelResult {
  TimeSlices slices;
  /// max_k |S - S_coarse|_2 / max_k |S|_2 at the nodes shared with a grid
  /// that keeps every other node; NaN when the grid is too small to coarsen.
  double refinement_gap = 0.0;
  [[nodiscard]] bool too_coarse() const { return refinement_gap > 0.01; }
};

/// int e^{-i(t-s)H^r} F(s) ds at every node of F's grid, per Hermite mode.
/// F is interpolated linearly between nodes (constant before the first and
/// after the last) and each piece is integrated in closed form.
DuhamelResult duhamel_S(const TimeSlices& F, const PropagatorSpec& h, DuhamelVariant variant);

/// E* F = int_0^T e^{isH^r} F(s) ds with the same interpolation.
HermiteCoeffs adjoint_E(const TimeSlices& F, const PropagatorSpec& h);

/// max over interior nodes of |i (u_{k+1} - u_{k-1}) / (2 dt) - H^r u_k - F_k|_2
/// for u = E u0 - i S1 F on TimeGrid::uniform(T, intervals).
double duhamel_residual(const HermiteCoeffs& u0, const std::function<HermiteCoeffs(double)>& F,
                        const PropagatorSpec& h, double T, int intervals);

/// Strong: (sum_k w_k g_k^r0)^{1/r0} (max for r0 = inf).
/// Weak: max over sampled levels l of l * mu{g >= l}^{1/r0}, mu from the weights.
double time_norm(const Trajectory& g, double r0, bool weak);

enum class HlsKernel { kSin, kCos };
enum class HlsVariant {
  kFull,    ///< T1: integral over [0, T]
  kCausal,  ///< T2: integral over [0, t]
};

/// (T h)(t) = int phi(t - s) h(s) ds with phi = |sin|^{-1/q0} or |cos|^{-1/q0},
/// evaluated at the nodes of `out` by graded quadrature toward the kernel
/// singularities. Requires q0 > 1.
Trajectory hls_apply(const std::function<double(double)>& h, double q0, HlsVariant variant, HlsKernel kernel,
                     const TimeGrid& out);

/// Conditions for T1, T2 : L^{p0} -> L^{r0}: 1/p0 + 1/q0 <= 1 + 1/r0 and q0 > 1,
/// strict when q0 < inf and (p0 = 1 or r0 = inf). nullopt when satisfied.
std::optional<std::string> hls_violation(double p0, double q0, double r0);

/// max ||T h||_{L^r0} / ||h||_{L^p0} over a fixed family of smooth h on
/// [0, T]; `level` refines both the output grid and the inner grading.
double hls_bound_estimate(double p0, double q0, double r0, double T, HlsVariant variant, HlsKernel kernel,
                          int level);

enum class StrichartzEstimate {
  kDuhamel,        ///< S_j : L^p0(source) -> L^r0(target), four space pairings
  kWeakType,       ///< E : M^{p,q} + W^{q,p} -> weak L^r0(M^{q,p}) and weak L^r0(W^{p,q})
  kHomogeneousL2,  ///< E : L^2 -> L^{p0'}(M^{p',p}) and L^{p0'}(W^{p,p'})
  kInhomogeneous,  ///< S2 : L^{p01}(M^{p1,p1'}) -> L^{p02'}(M^{p2',p2}), and W analogues
};

struct StrichartzExponents {
  double p = 2.0;
  double q = 2.0;
  double p0 = 2.0;
  double r0 = 2.0;
  double p2 = 2.0;   ///< second pair for kInhomogeneous
  double p02 = 2.0;  ///< second time exponent for kInhomogeneous
};

/// nullopt when the exponents are admissible for the estimate; otherwise
/// the violated inequality spelled out.
std::optional<std::string> strichartz_violation(StrichartzEstimate kind, int dim, const StrichartzExponents& e);

struct StrichartzConfig {
  StrichartzEstimate estimate = StrichartzEstimate::kDuhamel;
  StrichartzExponents exponents;
  /// Space pairing for kDuhamel (same convention as the FrFT estimates);
  /// kHomogeneousL2 and kInhomogeneous use kMtoM for the M form and kWtoW for the W form.
  EstimateDirection pairing = EstimateDirection::kMtoM;
  DuhamelVariant variant = DuhamelVariant::kS2;
  PropagatorSpec hamiltonian;  ///< rho, c, r; zeta unused
  double T = 1.0;
  int intervals = 64;
  int lattice_points = 65;
};

struct StrichartzReport {
  bool admissible = false;
  std::string violation;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double lhs_strong = 0.0;  ///< kWeakType only: strong-type counterpart of lhs
};

/// Evaluates both sides on a uniform time grid. Sources for the S operators
/// are F(s) = u for all s. Inadmissible exponents give admissible = false
/// and the violated inequality, without computing norms.
StrichartzReport verify_strichartz(const StrichartzConfig& cfg, const HermiteCoeffs& u);

struct StrichartzSweep {
  std::vector<StrichartzReport> reports;
  double max_ratio = 0.0;  ///< empirical lower bound for the operator norm
};

/// Runs h_0 .. h_8 and 20 random coefficient vectors (unit l2 mass, |alpha|
/// <= 8) drawn from `seed`.
StrichartzSweep sweep_strichartz(const StrichartzConfig& cfg, std::uint64_t seed);

/// Relative change of the ratio when the time mesh and lattice are refined.
double strichartz_refinement_change(const StrichartzConfig& cfg, const HermiteCoeffs& u);

}  // namespace osc
