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

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oscitool/hermite.hpp"

namespace osc {

/// exp(zeta H^r_{x,rho,c}) with H_{x,rho,c} = sum_j rho_j (x_j^2 - d_j^2) + c.
/// On h_alpha the power H^r acts by (2<alpha,rho> + sum(rho) + c)^r, taken
/// with the principal branch of the complex power.
struct PropagatorSpec {
  Complex zeta{0.0, 0.0};
  Eigen::VectorXcd rho;
  Complex c{0.0, 0.0};
  double r = 1.0;

  [[nodiscard]] int dim() const { return static_cast<int>(rho.size()); }
  /// No eigenvalue base 2<alpha,rho> + sum(rho) + c vanishes for |alpha| <= trunc.
  [[nodiscard]] bool avoids_zero_base(int trunc) const;
  /// r >= 0: powers and propagators are defined for every c.
  [[nodiscard]] bool nonnegative_power() const { return r >= 0.0; }
};

/// 2<alpha,rho> + sum(rho) + c
Complex eigenvalue_base(const PropagatorSpec& spec, const MultiIndex& alpha);

/// (2<alpha,rho> + sum(rho) + c)^r. Throws DomainError for a zero base with
/// r < 0.
Complex eigenvalue(const PropagatorSpec& spec, const MultiIndex& alpha);

/// Coefficient-wise multiplication by eigenvalue(alpha); zeta is ignored.
HermiteCoeffs apply_power(const HermiteCoeffs& c, const PropagatorSpec& spec);

/// Coefficient-wise multiplication by exp(zeta * eigenvalue(alpha)).
/// Entries whose product overflows are left infinite; see overflow_indices.
HermiteCoeffs apply_propagator(const HermiteCoeffs& c, const PropagatorSpec& spec);

/// Positions of non-finite coefficients.
std::vector<std::size_t> overflow_indices(const HermiteCoeffs& c);

enum class WitnessKind {
  kSchwartzLog2,  ///< c(alpha) = exp(-(log(1 + |alpha|))^2)
  kBeurling,      ///< c(alpha) = exp(-(1 + |alpha|)^{1/(2s)})
};

HermiteCoeffs witness_sequence(WitnessKind kind, int dim, int N, double s = 1.0);

enum class GrowthTag { kHs, kH0s, kFlat, kSchwartz, kTempered, kBeyond };

std::string to_string(GrowthTag tag);

/// Result of fitting |c(alpha)| against the candidate growth laws.
///   kHs:       exp(-r |alpha|^{1/(2s)}), parameter s. Such a sequence lies in
///              H_s and in H_{0,s'} for every s' > s.
///   kFlat:     (alpha!)^{-1/(2 sigma)} r^{|alpha|}, parameter sigma.
///   kSchwartz: faster than every <alpha>^{-N}, slower than any exp law.
///   kTempered: <alpha>^k, parameter k (may be negative).
///   kBeyond:   faster growth than every <alpha>^N.
struct GrowthClass {
  GrowthTag tag = GrowthTag::kTempered;
  double parameter = 0.0;
  double residual = 0.0;  ///< RMS fit residual relative to the log-envelope range
  bool accepted = false;  ///< residual <= kClassifierThreshold
};

inline constexpr double kClassifierThreshold = 0.05;

/// Fits log of the per-order envelope max_{|alpha| = n} |c(alpha)| against
/// the polynomial, log-quadratic, stretched-exponential and factorial laws.
/// Model selection runs on n in [N/8, N]; the reported parameter comes from
/// the asymptotic window [N/2, N]. Throws DomainError for all-zero input.
GrowthClass classify_growth(const HermiteCoeffs& c);

/// True when log|c| - exponent * log<n> increases strictly over the window
/// [N/2, N] of the envelope, i.e. no constant C gives |c| <= C <alpha>^exponent
/// uniformly in the truncation.
bool escapes_polynomial_bound(const HermiteCoeffs& c, double exponent);

enum class SpaceKind { kSchwartz, kTempered, kHs, kH0s, kHsDual, kH0sDual };

struct FunctionSpace {
  SpaceKind kind = SpaceKind::kSchwartz;
  double s = 0.0;  ///< index s of H_s and H_{0,s}
};

enum class Continuity { kHomeomorphism, kContinuous, kDiscontinuous, kNotCovered };

std::string to_string(Continuity c);

/// Decision table for exp(zeta H^r_{x,rho,c}) on `space`.
///  - zeta rho_j^r imaginary for all j: homeomorphism on every listed space.
///  - H_{0,s} with s <= 1/(2r), H_s with s < 1/(2r) and their duals:
///    homeomorphism for every zeta.
///  - Re(zeta rho_j^r) > 0 for every j: discontinuous on Schwartz, on
///    H_{0,s} with s > 1/(2r) and on H_s with s >= 1/(2r) (and the duals).
///  - everything else (mixed signs, r <= 0 outside the trivial r = 0) is
///    reported as kNotCovered rather than guessed.
Continuity classify_continuity(const PropagatorSpec& spec, const FunctionSpace& space);

}  // namespace osc
