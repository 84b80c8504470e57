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

// Reference computations that share no code with the library.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using Cplx = std::complex<double>;

// h_n(x) from the physicists' polynomial in long double; fine for n <= 20, |x| <= 8.
inline double hermite_function(int n, double x) {
  long double h0 = 1.0L;
  long double h1 = 2.0L * x;
  if (n == 0) h1 = h0;
  for (int k = 1; k < n; ++k) {
    const long double h2 = 2.0L * x * h1 - 2.0L * k * h0;
    h0 = h1;
    h1 = h2;
  }
  const long double norm = std::sqrt(std::pow(2.0L, n) * std::tgamma(static_cast<long double>(n) + 1.0L) *
                                     std::sqrt(std::numbers::pi_v<long double>));
  return static_cast<double>(h1 * std::exp(-0.5L * x * x) / norm);
}

// Adaptive Simpson on [a, b].
template <class F>
auto simpson(const F& f, double a, double b, double tol, int depth = 40) -> decltype(f(a)) {
  using T = decltype(f(a));
  std::function<T(double, double, T, T, T, T, double, int)> rec = [&](double lo, double hi, T flo, T fmid, T fhi,
                                                                      T whole, double eps, int d) -> T {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid);
    const double rm = 0.5 * (mid + hi);
    const T flm = f(lm);
    const T frm = f(rm);
    const T left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const T right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    const T diff = left + right - whole;
    if (d <= 0 || std::abs(diff) <= 15.0 * eps) return left + right + diff / 15.0;
    return rec(lo, mid, flo, flm, fmid, left, 0.5 * eps, d - 1) + rec(mid, hi, fmid, frm, fhi, right, 0.5 * eps, d - 1);
  };
  const T fa = f(a);
  const T fb = f(b);
  const T fm = f(0.5 * (a + b));
  return rec(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, depth);
}

// V f(x, xi) = (2 pi)^{-1/2} int f(y) phi(y - x) e^{-i y xi} dy in one dimension.
inline Cplx stft_direct(const std::function<Cplx(double)>& f, double x, double xi) {
  const double c = std::pow(std::numbers::pi, -0.25) / std::sqrt(2.0 * std::numbers::pi);
  auto g = [&](double y) { return f(y) * std::exp(-0.5 * (y - x) * (y - x)) * std::exp(Cplx(0.0, -y * xi)); };
  double lo = x - 12.0;
  Cplx s = 0.0;
  for (int k = 0; k < 24; ++k) s += simpson(g, lo + k, lo + k + 1.0, 1e-14);
  return c * s;
}

// int_0^inf r^k w(r)^2 e^{-r} dr / k! by adaptive Simpson on a truncated range.
inline double nu_direct(int k, const std::function<double(double)>& w) {
  auto g = [&](double r) { return std::exp(k * std::log(std::max(r, 1e-300)) - r - std::lgamma(k + 1.0)) * w(r) * w(r); };
  double s = 0.0;
  for (int j = 0; j < 200; ++j) s += simpson(g, 0.5 * j, 0.5 * (j + 1), 1e-14);
  return std::sqrt(s);
}

// Discrete mixed norm by explicit loops: inner norm along each row, outer over rows.
inline double mixed_direct(const std::vector<std::vector<double>>& a, double p_inner, double q_outer, double cell) {
  auto lp = [](const std::vector<double>& v, double p, double h) {
    if (std::isinf(p)) {
      double m = 0.0;
      for (double x : v) m = std::max(m, x);
      return m;
    }
    double s = 0.0;
    for (double x : v) s += std::pow(x, p) * h;
    return std::pow(s, 1.0 / p);
  };
  std::vector<double> inner;
  for (const auto& row : a) inner.push_back(lp(row, p_inner, cell));
  return lp(inner, q_outer, cell);
}

}  // namespace oracle
