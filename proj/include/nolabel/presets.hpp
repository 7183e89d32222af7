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

#ifndef NOLABEL_PRESETS_HPP
#define NOLABEL_PRESETS_HPP

#include <cmath>
#include <string>
#include <vector>

#include "nolabel/basis.hpp"
#include "nolabel/state.hpp"

namespace nolabel {

// Spin index convention for spin-1/2 bases.
inline constexpr std::size_t kSpinUp = 0;
inline constexpr std::size_t kSpinDown = 1;

struct PresetParams {
  std::string mode_a = "A";
  std::string mode_b = "B";
  std::size_t spin_a = kSpinUp;
  std::size_t spin_b = kSpinDown;
  // Only read by the "custom" preset.
  std::vector<ProductKet> custom_terms;
};

/// Two-particle states on a basis with spin-1/2 internal space:
///   product_AB   |A s_a, B s_b>
///   bell_singlet (|A up, B down> - |A down, B up>) / sqrt(2)
///   bell_triplet (|A up, B down> + |A down, B up>) / sqrt(2)
///   custom       the supplied terms
/// The 1/sqrt(2) makes the Bell states unit-norm when A and B are orthogonal.
inline NState build_preset(const std::string &name, Statistics statistics, const BasisPtr &basis,
                           const PresetParams &params = {}) {
  auto ket = [&](std::size_t sa, std::size_t sb) {
    return std::vector<SingleParticleState>{SingleParticleState::basis_vector(basis, params.mode_a, sa),
                                            SingleParticleState::basis_vector(basis, params.mode_b, sb)};
  };
  const double h = 1.0 / std::sqrt(2.0);
  if (name == "product_AB") {
    return NState(statistics, ProductKet(ket(params.spin_a, params.spin_b)));
  }
  if (name == "bell_singlet" || name == "bell_triplet") {
    if (basis->internal_size() != 2) {
      throw Error(ErrorCode::kInvalidArgument, name + " needs a spin-1/2 internal space");
    }
    const double s = name == "bell_singlet" ? -1.0 : 1.0;
    std::vector<ProductKet> terms;
    terms.emplace_back(h, ket(kSpinUp, kSpinDown));
    terms.emplace_back(s * h, ket(kSpinDown, kSpinUp));
    return NState(statistics, basis, 2, std::move(terms));
  }
  if (name == "custom") {
    if (params.custom_terms.empty()) throw Error(ErrorCode::kInvalidArgument, "custom preset needs explicit terms");
    return NState(statistics, basis, params.custom_terms.front().size(), params.custom_terms);
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown preset '" + name + "' (expected product_AB, bell_singlet, bell_triplet or custom)");
}

}  // namespace nolabel

#endif  // NOLABEL_PRESETS_HPP
