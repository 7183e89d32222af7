// Copyright 2026 The nolabel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NOLABEL_ASSIGNMENTS_HPP
#define NOLABEL_ASSIGNMENTS_HPP

#include <cstddef>
#include <vector>

#include "nolabel/common.hpp"
#include "nolabel/state.hpp"

namespace nolabel::detail {

// Visits every permutation `slot -> particle` for which weights(slot,
// particle) > threshold holds in all slots, in lexicographic order. The
// callback receives the assignment, its parity and the product of weights.
// Zero-weight branches are pruned before descending.
template <typename Callback>
void for_each_assignment(const RMatrix &weights, double threshold, Callback &&callback) {
  const auto n = static_cast<std::size_t>(weights.rows());
  std::vector<std::size_t> assignment(n);
  std::vector<bool> used(n, false);
  std::vector<double> partial(n + 1, 1.0);

  auto recurse = [&](auto &&self, std::size_t slot) -> void {
    if (slot == n) {
      callback(static_cast<const std::vector<std::size_t> &>(assignment), permutation_parity(assignment), partial[n]);
      return;
    }
    for (std::size_t p = 0; p < n; ++p) {
      const double w = weights(static_cast<Eigen::Index>(slot), static_cast<Eigen::Index>(p));
      if (used[p] || !(w > threshold)) continue;
      used[p] = true;
      assignment[slot] = p;
      partial[slot + 1] = partial[slot] * w;
      self(self, slot + 1);
      used[p] = false;
    }
  };
  recurse(recurse, 0);
}

}  // namespace nolabel::detail

#endif  // NOLABEL_ASSIGNMENTS_HPP
