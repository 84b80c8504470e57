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

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <vector>

namespace osc {

/// A multi-index alpha in N^d.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries);

  [[nodiscard]] int dim() const { return static_cast<int>(entries_.size()); }
  [[nodiscard]] int order() const { return order_; }
  [[nodiscard]] int operator[](int j) const { return entries_[static_cast<std::size_t>(j)]; }
  [[nodiscard]] std::span<const int> entries() const { return entries_; }

  /// log(alpha!) = sum_j log(alpha_j!)
  [[nodiscard]] double log_factorial() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  std::vector<int> entries_;
  int order_ = 0;
};

/// Enumeration of { alpha in N^d : |alpha| <= N } in graded lexicographic
/// order: by total order, then lexicographically descending within an order,
/// so (1,0) precedes (0,1).
class SimplexIndex {
 public:
  SimplexIndex(int dim, int trunc);

  /// Shared instance per (dim, trunc); enumeration is immutable.
  static std::shared_ptr<const SimplexIndex> get(int dim, int trunc);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int trunc() const { return trunc_; }
  [[nodiscard]] std::size_t size() const { return list_.size(); }
  [[nodiscard]] const MultiIndex& operator[](std::size_t i) const { return list_[i]; }
  [[nodiscard]] const std::vector<MultiIndex>& list() const { return list_; }

  /// Position of alpha, or size() when alpha is outside the simplex.
  [[nodiscard]] std::size_t find(const MultiIndex& alpha) const;
  /// First position holding an index of total order n (n <= trunc + 1).
  [[nodiscard]] std::size_t order_begin(int n) const { return order_begin_[static_cast<std::size_t>(n)]; }

 private:
  int dim_;
  int trunc_;
  std::vector<MultiIndex> list_;
  std::vector<std::size_t> order_begin_;
  std::map<MultiIndex, std::size_t> lookup_;
};

/// C(n + d, d), the number of multi-indices of order <= n in dimension d.
std::size_t simplex_size(int dim, int trunc);

}  // namespace osc
