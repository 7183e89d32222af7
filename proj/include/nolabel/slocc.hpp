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

#ifndef NOLABEL_SLOCC_HPP
#define NOLABEL_SLOCC_HPP

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "nolabel/basis.hpp"
#include "nolabel/common.hpp"
#include "nolabel/kernels.hpp"
#include "nolabel/labeled.hpp"
#include "nolabel/state.hpp"

namespace nolabel {

/// Ordered, pairwise disjoint detection regions for coincidence
/// postselection. Their order fixes the labeled tensor-factor order.
class SloccRegions {
 public:
  SloccRegions(BasisPtr basis, std::vector<Region> regions) : basis_(std::move(basis)), regions_(std::move(regions)) {
    if (regions_.empty()) throw Error(ErrorCode::kStructural, "sLOCC needs at least one region");
    require_pairwise_disjoint(regions_, "sLOCC regions");
  }

  SloccRegions(BasisPtr basis, const std::vector<std::vector<std::string>> &mode_names) : basis_(std::move(basis)) {
    for (const auto &names : mode_names) regions_.emplace_back(*basis_, names);
    if (regions_.empty()) throw Error(ErrorCode::kStructural, "sLOCC needs at least one region");
    require_pairwise_disjoint(regions_, "sLOCC regions");
  }

  const BasisPtr &basis() const { return basis_; }
  const std::vector<Region> &regions() const { return regions_; }
  std::size_t size() const { return regions_.size(); }

 private:
  BasisPtr basis_;
  std::vector<Region> regions_;
};

/// The coincidence projector sum_sigma |S_1 s_1, ..., S_N s_N><...|, kept
/// as its list of terms. |S_k s> is the uniform superposition over the
/// region's modes with internal configuration s.
class SloccProjector {
 public:
  explicit SloccProjector(SloccRegions regions) : regions_(std::move(regions)) {
    const std::size_t k = regions_.basis()->internal_size();
    std::size_t count = 1;
    for (std::size_t i = 0; i < regions_.size(); ++i) count *= k;
    configs_.reserve(count);
    for (std::size_t flat = 0; flat < count; ++flat) {
      std::vector<std::size_t> local(regions_.size());
      std::size_t rest = flat;
      for (std::size_t i = regions_.size(); i-- > 0;) {
        local[i] = rest % k;
        rest /= k;
      }
      configs_.push_back(std::move(local));
    }
  }

  const SloccRegions &regions() const { return regions_; }
  std::size_t size() const { return configs_.size(); }
  const std::vector<std::vector<std::size_t>> &configs() const { return configs_; }
  std::vector<std::size_t> labeled_dims() const {
    return std::vector<std::size_t>(regions_.size(), regions_.basis()->internal_size());
  }

  /// |S_region config>.
  SingleParticleState region_state(std::size_t region, std::size_t config) const {
    const auto &basis = regions_.basis();
    const auto &r = regions_.regions()[region];
    CVector v = CVector::Zero(static_cast<Eigen::Index>(basis->dim()));
    const double a = 1.0 / std::sqrt(static_cast<double>(r.size()));
    for (auto m : r.modes()) v[static_cast<Eigen::Index>(basis->index(m, config))] = a;
    return SingleParticleState(basis, std::move(v));
  }

  ProductKet term(std::size_t i) const {
    std::vector<SingleParticleState> fs;
    for (std::size_t k = 0; k < regions_.size(); ++k) fs.push_back(region_state(k, configs_[i][k]));
    return ProductKet(std::move(fs));
  }

 private:
  SloccRegions regions_;
  std::vector<std::vector<std::size_t>> configs_;
};

inline SloccProjector slocc_projector(const SloccRegions &regions) { return SloccProjector(regions); }

namespace detail {

// Unnormalized labeled amplitudes <S_1 s_1, ..., S_N s_N | psi>.
inline CVector coincidence_amplitudes(const SloccProjector &proj, const NState &state) {
  if (state.particles() != proj.regions().size()) {
    throw Error(ErrorCode::kStructural, "state has " + std::to_string(state.particles()) + " particles for " +
                                            std::to_string(proj.regions().size()) + " regions");
  }
  require_same_basis(state.basis(), proj.regions().basis());
  CVector amps(static_cast<Eigen::Index>(proj.size()));
  for (std::size_t i = 0; i < proj.size(); ++i) {
    amps[static_cast<Eigen::Index>(i)] = inner_product(NState(state.statistics(), proj.term(i)), state);
  }
  return amps;
}

}  // namespace detail

struct PurePostselection {
  LabeledState state;
  double probability;
};

struct MixedPostselection {
  LabeledDensityMatrix rho;
  double probability;
};

/// Projects onto single-occupancy coincidences and maps the result to the
/// labeled space. The probability is relative to <psi|psi>; the bunched
/// remainder has probability 1 - P.
inline PurePostselection slocc_postselect_pure(const NState &state, const SloccRegions &regions) {
  const SloccProjector proj(regions);
  const double in2 = inner_product(state, state).real();
  if (in2 < kZeroTolerance) throw Error(ErrorCode::kDegenerateState, "cannot postselect a zero-norm state");
  CVector amps = detail::coincidence_amplitudes(proj, state);
  const double kept = amps.squaredNorm();
  const double p = kept / in2;
  if (p < kZeroTolerance) throw Error(ErrorCode::kNoCoincidence, "postselection probability is zero");
  amps /= std::sqrt(kept);
  return {LabeledState(proj.labeled_dims(), std::move(amps)), p};
}

inline MixedPostselection slocc_postselect_mixed(const Ensemble &rho, const SloccRegions &regions) {
  const SloccProjector proj(regions);
  const auto dims = proj.labeled_dims();
  const auto n = static_cast<Eigen::Index>(proj.size());
  CMatrix acc = CMatrix::Zero(n, n);
  for (const auto &m : rho.members()) {
    if (m.weight == 0.0) continue;
    const double in2 = inner_product(m.state, m.state).real();
    if (in2 < kZeroTolerance) throw Error(ErrorCode::kDegenerateState, "ensemble member has zero norm");
    const CVector a = detail::coincidence_amplitudes(proj, m.state);
    acc += (m.weight / in2) * (a * a.adjoint());
  }
  const double p = acc.trace().real();
  if (p < kZeroTolerance) throw Error(ErrorCode::kNoCoincidence, "postselection probability is zero");
  acc /= p;
  return {LabeledDensityMatrix(dims, std::move(acc)), p};
}

/// Relative phase theta in (-pi, pi] between the |L down, R up> and
/// |L up, R down> components of a two-region spin-1/2 output, with the
/// deformation amplitudes divided out.
inline double extract_exchange_phase(const LabeledState &output, Complex l, Complex lp, Complex r, Complex rp) {
  if (output.dims != std::vector<std::size_t>{2, 2}) {
    throw Error(ErrorCode::kInvalidArgument, "exchange phase needs a two-region spin-1/2 labeled state");
  }
  for (Complex c : {l, lp, r, rp}) {
    if (is_zero(c)) throw Error(ErrorCode::kPhaseUndefined, "deformation amplitudes must all be nonzero");
  }
  const Complex up_down = output.amplitude({0, 1});
  const Complex down_up = output.amplitude({1, 0});
  if (is_zero(up_down) || is_zero(down_up)) {
    throw Error(ErrorCode::kPhaseUndefined, "a coincidence amplitude vanishes");
  }
  Complex z = (down_up * l * rp) / (up_down * lp * r);
  // Snap round-off in the imaginary part so that eta = -1 maps to +pi.
  if (std::abs(z.imag()) <= kZeroTolerance * std::abs(z)) z = Complex(z.real(), 0.0);
  return std::arg(z);
}

}  // namespace nolabel

#endif  // NOLABEL_SLOCC_HPP
