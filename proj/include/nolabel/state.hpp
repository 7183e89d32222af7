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

#ifndef NOLABEL_STATE_HPP
#define NOLABEL_STATE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "nolabel/basis.hpp"
#include "nolabel/common.hpp"

namespace nolabel {

/// Amplitude table of one particle over a ModeBasis.
class SingleParticleState {
 public:
  SingleParticleState(BasisPtr basis, CVector amplitudes) : basis_(std::move(basis)), amps_(std::move(amplitudes)) {
    if (!basis_) throw Error(ErrorCode::kStructural, "single-particle state without basis");
    if (static_cast<std::size_t>(amps_.size()) != basis_->dim()) {
      throw Error(ErrorCode::kBasisMismatch, "amplitude table size " + std::to_string(amps_.size()) +
                                                 " does not match basis dimension " + std::to_string(basis_->dim()));
    }
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
      if (!std::isfinite(amps_[i].real()) || !std::isfinite(amps_[i].imag())) {
        throw Error(ErrorCode::kStructural, "non-finite amplitude");
      }
    }
  }

  static SingleParticleState zero(const BasisPtr &basis) {
    return SingleParticleState(basis, CVector::Zero(static_cast<Eigen::Index>(basis->dim())));
  }

  static SingleParticleState basis_vector(const BasisPtr &basis, const std::string &mode, std::size_t config = 0) {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(basis->dim()));
    if (config >= basis->internal_size()) throw Error(ErrorCode::kBasisMismatch, "internal configuration out of range");
    v[static_cast<Eigen::Index>(basis->index(basis->mode_index(mode), config))] = 1.0;
    return SingleParticleState(basis, std::move(v));
  }

  /// Spatial amplitudes (one per mode) tensored with an internal-state vector.
  static SingleParticleState product(const BasisPtr &basis, const CVector &spatial, const CVector &internal) {
    if (static_cast<std::size_t>(spatial.size()) != basis->num_modes() ||
        static_cast<std::size_t>(internal.size()) != basis->internal_size()) {
      throw Error(ErrorCode::kBasisMismatch, "spatial/internal factor sizes do not match basis");
    }
    CVector v(static_cast<Eigen::Index>(basis->dim()));
    for (std::size_t m = 0; m < basis->num_modes(); ++m) {
      for (std::size_t c = 0; c < basis->internal_size(); ++c) {
        v[static_cast<Eigen::Index>(basis->index(m, c))] =
            spatial[static_cast<Eigen::Index>(m)] * internal[static_cast<Eigen::Index>(c)];
      }
    }
    return SingleParticleState(basis, std::move(v));
  }

  const BasisPtr &basis() const { return basis_; }
  const CVector &amplitudes() const { return amps_; }

  Complex amplitude(std::size_t mode, std::size_t config) const {
    return amps_[static_cast<Eigen::Index>(basis_->index(mode, config))];
  }

  double norm_squared() const { return amps_.squaredNorm(); }

  SingleParticleState scaled(Complex s) const { return SingleParticleState(basis_, amps_ * s); }

  SingleParticleState normalized() const {
    const double n = std::sqrt(norm_squared());
    if (n < kZeroTolerance) throw Error(ErrorCode::kDegenerateState, "cannot normalize zero single-particle state");
    return SingleParticleState(basis_, amps_ / n);
  }

  /// Squared norm of the part of the state on the given modes (all internal configurations).
  double weight_in(const Region &region) const {
    double w = 0.0;
    for (auto m : region.modes()) {
      for (std::size_t c = 0; c < basis_->internal_size(); ++c) w += std::norm(amplitude(m, c));
    }
    return w;
  }

  /// Spatial modes carrying nonzero amplitude.
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> out;
    for (std::size_t m = 0; m < basis_->num_modes(); ++m) {
      for (std::size_t c = 0; c < basis_->internal_size(); ++c) {
        if (!is_zero(amplitude(m, c))) {
          out.push_back(m);
          break;
        }
      }
    }
    return out;
  }

  /// Exact lexicographic order over the amplitude table, real part before imaginary part.
  friend int compare(const SingleParticleState &a, const SingleParticleState &b) {
    for (Eigen::Index i = 0; i < a.amps_.size(); ++i) {
      const Complex x = a.amps_[i];
      const Complex y = b.amps_[i];
      if (x.real() != y.real()) return x.real() < y.real() ? -1 : 1;
      if (x.imag() != y.imag()) return x.imag() < y.imag() ? -1 : 1;
    }
    return 0;
  }

  friend bool approx_equal(const SingleParticleState &a, const SingleParticleState &b, double tol = kEqualTolerance) {
    return (a.amps_ - b.amps_).cwiseAbs().maxCoeff() <= tol;
  }

 private:
  BasisPtr basis_;
  CVector amps_;
};

struct ProductKet {
  Complex coefficient{1.0, 0.0};
  std::vector<SingleParticleState> factors;

  ProductKet(Complex c, std::vector<SingleParticleState> fs) : coefficient(c), factors(std::move(fs)) { validate(); }
  explicit ProductKet(std::vector<SingleParticleState> fs) : ProductKet(Complex{1.0, 0.0}, std::move(fs)) {}

  std::size_t size() const { return factors.size(); }
  const BasisPtr &basis() const { return factors.front().basis(); }

 private:
  void validate() const {
    if (factors.empty()) throw Error(ErrorCode::kStructural, "product ket needs at least one factor");
    for (const auto &f : factors) require_same_basis(f.basis(), factors.front().basis());
  }
};

/// Formal linear combination of no-label product kets of N identical particles.
class NState {
 public:
  NState(Statistics statistics, ProductKet term)
      : statistics_(statistics), basis_(term.basis()), particles_(term.size()) {
    terms_.push_back(std::move(term));
  }

  NState(Statistics statistics, BasisPtr basis, std::size_t particles, std::vector<ProductKet> terms)
      : statistics_(statistics), basis_(std::move(basis)), particles_(particles), terms_(std::move(terms)) {
    if (particles_ == 0) throw Error(ErrorCode::kStructural, "particle number must be at least 1");
    for (const auto &t : terms_) {
      if (t.size() != particles_) {
        throw Error(ErrorCode::kStructural, "terms with mixed particle numbers (" + std::to_string(t.size()) +
                                                " vs " + std::to_string(particles_) + ")");
      }
      require_same_basis(t.basis(), basis_);
    }
  }

  Statistics statistics() const { return statistics_; }
  const BasisPtr &basis() const { return basis_; }
  std::size_t particles() const { return particles_; }
  const std::vector<ProductKet> &terms() const { return terms_; }
  bool is_single_ket() const { return terms_.size() == 1; }

  NState scaled(Complex s) const {
    auto terms = terms_;
    for (auto &t : terms) t.coefficient *= s;
    return NState(statistics_, basis_, particles_, std::move(terms));
  }

  friend NState operator+(const NState &a, const NState &b) {
    a.require_compatible(b);
    auto terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return NState(a.statistics_, a.basis_, a.particles_, std::move(terms));
  }
  friend NState operator-(const NState &a, const NState &b) { return a + b.scaled(-1.0); }
  friend NState operator*(Complex s, const NState &a) { return a.scaled(s); }

  void require_compatible(const NState &other) const {
    if (!(statistics_ == other.statistics_)) throw Error(ErrorCode::kStructural, "statistics mismatch");
    if (particles_ != other.particles_) throw Error(ErrorCode::kStructural, "particle number mismatch");
    require_same_basis(basis_, other.basis_);
  }

 private:
  Statistics statistics_;
  BasisPtr basis_;
  std::size_t particles_;
  std::vector<ProductKet> terms_;
};

namespace detail {

inline int compare_factor_lists(const std::vector<SingleParticleState> &a, const std::vector<SingleParticleState> &b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (int c = compare(a[i], b[i]); c != 0) return c;
  }
  return 0;
}

inline bool factor_lists_equal(const std::vector<SingleParticleState> &a, const std::vector<SingleParticleState> &b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!approx_equal(a[i], b[i])) return false;
  }
  return true;
}

// Parity (0 even, 1 odd) of a permutation given as an index vector.
inline int permutation_parity(const std::vector<std::size_t> &perm) {
  std::vector<bool> seen(perm.size(), false);
  int parity = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    parity ^= static_cast<int>((len + 1) & 1);
  }
  return parity;
}

}  // namespace detail

/// Sorts every term's factors into canonical order (tracking the exchange
/// sign), merges terms with equal factor lists and drops vanishing terms.
inline NState canonicalize(const NState &state) {
  const Statistics stats = state.statistics();
  std::vector<ProductKet> merged;
  for (const auto &term : state.terms()) {
    std::vector<std::size_t> order(term.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      return compare(term.factors[i], term.factors[j]) < 0;
    });
    std::vector<SingleParticleState> sorted;
    sorted.reserve(term.size());
    for (auto i : order) sorted.push_back(term.factors[i]);
    const Complex coeff = term.coefficient * stats.sign(detail::permutation_parity(order));

    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const ProductKet &k) { return detail::factor_lists_equal(k.factors, sorted); });
    if (it != merged.end()) {
      it->coefficient += coeff;
    } else {
      merged.emplace_back(coeff, std::move(sorted));
    }
  }
  std::erase_if(merged, [](const ProductKet &k) { return is_zero(k.coefficient); });
  std::sort(merged.begin(), merged.end(), [](const ProductKet &a, const ProductKet &b) {
    return detail::compare_factor_lists(a.factors, b.factors) < 0;
  });
  return NState(stats, state.basis(), state.particles(), std::move(merged));
}

/// Convex mixture of N-particle states.
class Ensemble {
 public:
  struct Member {
    double weight;
    NState state;
  };

  explicit Ensemble(std::vector<Member> members) : members_(std::move(members)) {
    if (members_.empty()) throw Error(ErrorCode::kStructural, "ensemble needs at least one member");
    double total = 0.0;
    for (const auto &m : members_) {
      if (!(m.weight >= 0.0)) throw Error(ErrorCode::kStructural, "ensemble weight must be nonnegative");
      m.state.require_compatible(members_.front().state);
      total += m.weight;
    }
    if (std::abs(total - 1.0) > kEqualTolerance) {
      throw Error(ErrorCode::kStructural, "ensemble weights sum to " + std::to_string(total) + ", expected 1");
    }
  }

  static Ensemble pure(NState state) { return Ensemble({Member{1.0, std::move(state)}}); }

  const std::vector<Member> &members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  Statistics statistics() const { return members_.front().state.statistics(); }
  const BasisPtr &basis() const { return members_.front().state.basis(); }
  std::size_t particles() const { return members_.front().state.particles(); }

 private:
  std::vector<Member> members_;
};

}  // namespace nolabel

#endif  // NOLABEL_STATE_HPP
