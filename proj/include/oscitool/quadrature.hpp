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

#include "oscitool/hermite.hpp"

namespace osc {

/// Generalized Gauss-Laguerre rule for the probability measure
/// r^a e^{-r} dr / Gamma(a+1) on (0, inf); weights sum to one.
QuadratureRule gauss_laguerre_rule(int n, double a);

/// Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre_rule(int n);

/// Gauss-Legendre rule mapped to [lo, hi].
QuadratureRule gauss_legendre_rule(int n, double lo, double hi);

}  // namespace osc
