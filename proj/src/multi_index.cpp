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

#include "oscitool/multi_index.hpp"

#include <cmath>
#include <mutex>
#include <numeric>
#include <utility>

#include "oscitool/errors.hpp"

namespace osc {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DomainError("multi-index needs dimension >= 1");
  for (int e : entries_) {
    if (e < 0) throw DomainError("multi-index entries must be nonnegative");
  }
  order_ = std::accumulate(entries_.begin(), entries_.end(), 0);
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::vector<int>(entries)) {}

double MultiIndex::log_factorial() const {
  double s = 0.0;
  for (int e : entries_) s += std::lgamma(e + 1.0);
  return s;
}

namespace {

// All compositions of n into d parts, lexicographically descending.
void compositions(int n, int d, std::vector<int>& prefix, std::vector<MultiIndex>& out) {
  if (d == 1) {
    prefix.push_back(n);
    out.emplace_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = n; first >= 0; --first) {
    prefix.push_back(first);
    compositions(n - first, d - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

SimplexIndex::SimplexIndex(int dim, int trunc) : dim_(dim), trunc_(trunc) {
  if (dim < 1) throw DomainError("dimension must be >= 1");
  if (trunc < 0) throw DomainError("truncation order must be >= 0");
  list_.reserve(simplex_size(dim, trunc));
  std::vector<int> prefix;
  for (int n = 0; n <= trunc; ++n) {
    order_begin_.push_back(list_.size());
    compositions(n, dim, prefix, list_);
  }
  order_begin_.push_back(list_.size());
  for (std::size_t i = 0; i < list_.size(); ++i) lookup_.emplace(list_[i], i);
}

std::shared_ptr<const SimplexIndex> SimplexIndex::get(int dim, int trunc) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const SimplexIndex>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{dim, trunc}];
  if (!slot) slot = std::make_shared<const SimplexIndex>(dim, trunc);
  return slot;
}

std::size_t SimplexIndex::find(const MultiIndex& alpha) const {
  auto it = lookup_.find(alpha);
  return it == lookup_.end() ? list_.size() : it->second;
}

std::size_t simplex_size(int dim, int trunc) {
  // C(trunc + dim, dim) computed incrementally; exact in integer arithmetic.
  std::size_t r = 1;
  for (int k = 1; k <= dim; ++k) r = r * static_cast<std::size_t>(trunc + k) / static_cast<std::size_t>(k);
  return r;
}

}  // namespace osc
