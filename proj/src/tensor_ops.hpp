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

#include <vector>

#include <Eigen/Dense>

namespace osc::detail {

using RowMajorMatrixXcd = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline Eigen::Index product(const std::vector<Eigen::Index>& shape, std::size_t from, std::size_t to) {
  Eigen::Index p = 1;
  for (std::size_t k = from; k < to; ++k) p *= shape[k];
  return p;
}

/// Applies `m` (rows x shape[axis]) along one axis of a row-major tensor.
/// On return shape[axis] == m.rows().
template <typename Derived>
Eigen::VectorXcd contract_axis(const Eigen::VectorXcd& tensor, std::vector<Eigen::Index>& shape,
                               std::size_t axis, const Eigen::MatrixBase<Derived>& m) {
  const Eigen::Index outer = product(shape, 0, axis);
  const Eigen::Index inner = product(shape, axis + 1, shape.size());
  const Eigen::Index n = shape[axis];
  const Eigen::Index r = m.rows();
  eigen_assert(m.cols() == n);
  Eigen::VectorXcd out(outer * r * inner);
  for (Eigen::Index o = 0; o < outer; ++o) {
    Eigen::Map<const RowMajorMatrixXcd> in_block(tensor.data() + o * n * inner, n, inner);
    Eigen::Map<RowMajorMatrixXcd> out_block(out.data() + o * r * inner, r, inner);
    out_block.noalias() = m.template cast<std::complex<double>>() * in_block;
  }
  shape[axis] = r;
  return out;
}

/// Row-major multi-index of flat position `flat` in `shape`.
inline void unravel(Eigen::Index flat, const std::vector<Eigen::Index>& shape, std::vector<Eigen::Index>& idx) {
  idx.resize(shape.size());
  for (std::size_t k = shape.size(); k-- > 0;) {
    idx[k] = flat % shape[k];
    flat /= shape[k];
  }
}

}  // namespace osc::detail
