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

#ifndef NOLABEL_INDISTINGUISHABILITY_HPP
#define NOLABEL_INDISTINGUISHABILITY_HPP

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "nolabel/assignments.hpp"
#include "nolabel/basis.hpp"
#include "nolabel/common.hpp"
#include "nolabel/state.hpp"

namespace nolabel {

/// A single-particle detector on a region that also resolves some internal
/// degrees of freedom. Unlisted dofs are traced over.
struct DetectorSpec {
  Region region;
  std::vector<std::pair<std::string, std::size_t>> accessible;
};

class DetectionSetup {
 public:
  DetectionSetup(BasisPtr basis, std::vector<DetectorSpec> detectors)
      : basis_(std::move(basis)), detectors_(std::move(detectors)) {
    if (detectors_.empty()) throw Error(ErrorCode::kStructural, "detection setup needs at least one detector");
    std::vector<Region> regions;
    for (const auto &d : detectors_) {
      regions.push_back(d.region);
      for (const auto &[dof, value] : d.accessible) {
        auto idx = basis_->find_dof(dof);
        if (!idx) throw Error(ErrorCode::kBasisMismatch, "detector reads unknown dof '" + dof + "'");
        if (value >= basis_->internal_dofs()[*idx].dim) {
          throw Error(ErrorCode::kBasisMismatch, "detector outcome out of range for dof '" + dof + "'");
        }
      }
    }
    require_pairwise_disjoint(regions, "detection setup");
  }

  /// Detectors on the given regions, blind to every internal dof.
  static DetectionSetup spatial_only(BasisPtr basis, std::vector<Region> regions) {
    std::vector<DetectorSpec> ds;
    for (auto &r : regions) ds.push_back({std::move(r), {}});
    return DetectionSetup(std::move(basis), std::move(ds));
  }

  const BasisPtr &basis() const { return basis_; }
  const std::vector<DetectorSpec> &detectors() const { return detectors_; }
  std::size_t size() const { return detectors_.size(); }

 private:
  BasisPtr basis_;
  std::vector<DetectorSpec> detectors_;
};

/// P = sum over inaccessible configurations of |<S_k alpha_k beta|psi>|^2.
inline double detection_prob(const ModeBasis &basis, const DetectorSpec &detector, const SingleParticleState &psi) {
  if (!(*psi.basis() == basis)) throw Error(ErrorCode::kBasisMismatch, "detector and state use different bases");
  std::vector<std::pair<std::size_t, std::size_t>> required;
  for (const auto &[dof, value] : detector.accessible) {
    auto idx = basis.find_dof(dof);
    if (!idx) throw Error(ErrorCode::kBasisMismatch, "detector reads unknown dof '" + dof + "'");
    required.emplace_back(*idx, value);
  }
  double p = 0.0;
  for (auto m : detector.region.modes()) {
    for (std::size_t c = 0; c < basis.internal_size(); ++c) {
      bool match = true;
      for (const auto &[dof, value] : required) {
        if (basis.dof_value(c, dof) != value) {
          match = false;
          break;
        }
      }
      if (match) p += std::norm(psi.amplitude(m, c));
    }
  }
  return p;
}

/// P(k, j): probability that detector k fires on particle j.
inline RMatrix detection_matrix(const DetectionSetup &setup, const std::vector<SingleParticleState> &factors) {
  if (factors.size() != setup.size()) {
    throw Error(ErrorCode::kStructural, "setup has " + std::to_string(setup.size()) + " detectors for " +
                                            std::to_string(factors.size()) + " particles");
  }
  const auto n = static_cast<Eigen::Index>(factors.size());
  RMatrix p(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) {
      p(k, j) = detection_prob(*setup.basis(), setup.detectors()[static_cast<std::size_t>(k)],
                               factors[static_cast<std::size_t>(j)]);
    }
  }
  return p;
}

/// Product over detectors k of P(k, assignment[k]).
inline double joint_prob(const DetectionSetup &setup, const std::vector<SingleParticleState> &factors,
                         const std::vector<std::size_t> &assignment) {
  const std::size_t n = factors.size();
  if (assignment.size() != n) throw Error(ErrorCode::kInvalidArgument, "assignment has wrong length");
  std::vector<bool> seen(n, false);
  for (auto j : assignment) {
    if (j >= n || seen[j]) throw Error(ErrorCode::kInvalidArgument, "assignment is not a permutation");
    seen[j] = true;
  }
  double p = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    p *= detection_prob(*setup.basis(), setup.detectors()[k], factors[assignment[k]]);
  }
  return p;
}

/// Joint probabilities of every nonvanishing distinct assignment.
inline std::vector<double> assignment_probabilities(const DetectionSetup &setup,
                                                    const std::vector<SingleParticleState> &factors) {
  const RMatrix p = detection_matrix(setup, factors);
  std::vector<double> out;
  detail::for_each_assignment(p, 0.0, [&](const std::vector<std::size_t> &, int, double w) { out.push_back(w); });
  return out;
}

inline double partition_function(const DetectionSetup &setup, const std::vector<SingleParticleState> &factors) {
  double z = 0.0;
  for (double p : assignment_probabilities(setup, factors)) z += p;
  return z;
}

/// Shannon entropy (bits) of the normalized joint detection probabilities
/// over distinct detector-to-particle assignments. Ranges over [0, log2 N!].
inline double degree_of_indistinguishability(const DetectionSetup &setup,
                                             const std::vector<SingleParticleState> &factors) {
  const auto probs = assignment_probabilities(setup, factors);
  double z = 0.0;
  for (double p : probs) z += p;
  if (z < kZeroTolerance) {
    throw Error(ErrorCode::kMeasureUndefined, "no coincidence detection event is possible (Z = 0)");
  }
  double entropy = 0.0;
  for (double p : probs) {
    const double x = p / z;
    if (x > 0.0) entropy -= x * std::log2(x);
  }
  return entropy > 0.0 ? entropy : 0.0;
}

/// Measure for a state made of a single product ket; superpositions are rejected.
inline double degree_of_indistinguishability(const DetectionSetup &setup, const NState &state) {
  if (!state.is_single_ket()) {
    throw Error(ErrorCode::kInvalidArgument, "indistinguishability is defined on a single product ket, got " +
                                                 std::to_string(state.terms().size()) + " terms");
  }
  return degree_of_indistinguishability(setup, state.terms().front().factors);
}

}  // namespace nolabel

#endif  // NOLABEL_INDISTINGUISHABILITY_HPP
