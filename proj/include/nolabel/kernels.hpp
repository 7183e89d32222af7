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

#ifndef NOLABEL_KERNELS_HPP
#define NOLABEL_KERNELS_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nolabel/common.hpp"
#include "nolabel/state.hpp"

namespace nolabel {

// Largest matrix accepted by permanent(); 2^24 Gray-code steps.
inline constexpr Eigen::Index kMaxPermanentSize = 24;

/// <bra|ket>, conjugate-linear in the bra.
inline Complex overlap(const SingleParticleState &bra, const SingleParticleState &ket) {
  require_same_basis(bra.basis(), ket.basis());
  return bra.amplitudes().dot(ket.amplitudes());
}

/// M(i, j) = <bra_i | ket_j>.
inline CMatrix overlap_matrix(const std::vector<SingleParticleState> &bra, const std::vector<SingleParticleState> &ket) {
  if (bra.size() != ket.size()) throw Error(ErrorCode::kStructural, "overlap matrix needs equal particle numbers");
  const auto n = static_cast<Eigen::Index>(bra.size());
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = overlap(bra[i], ket[j]);
  }
  return m;
}

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived> &m, const char *what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kStructural, std::string(what) + " of non-square " + std::to_string(m.rows()) + "x" +
                                            std::to_string(m.cols()) + " matrix");
  }
}

}  // namespace detail

/// Permanent via Ryser's inclusion-exclusion formula, visiting column
/// subsets in Gray-code order so each step updates the row sums with a
/// single column. Sizes up to 3 are expanded directly.
template <typename Derived>
typename Derived::Scalar permanent(const Eigen::MatrixBase<Derived> &a) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(a, "permanent");
  const Eigen::Index n = a.rows();
  if (n > kMaxPermanentSize) {
    throw Error(ErrorCode::kInvalidArgument, "permanent size " + std::to_string(n) + " exceeds limit " +
                                                 std::to_string(kMaxPermanentSize));
  }
  switch (n) {
    case 0: return Scalar(1);
    case 1: return a(0, 0);
    case 2: return a(0, 0) * a(1, 1) + a(0, 1) * a(1, 0);
    case 3:
      return a(0, 0) * (a(1, 1) * a(2, 2) + a(1, 2) * a(2, 1)) + a(0, 1) * (a(1, 0) * a(2, 2) + a(1, 2) * a(2, 0)) +
             a(0, 2) * (a(1, 0) * a(2, 1) + a(1, 1) * a(2, 0));
    default: break;
  }

  std::vector<Scalar> row_sums(static_cast<std::size_t>(n), Scalar(0));
  Scalar total(0);
  std::uint64_t gray = 0;
  const std::uint64_t steps = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < steps; ++k) {
    const int col = std::countr_zero(k);
    const std::uint64_t bit = std::uint64_t{1} << col;
    gray ^= bit;
    if (gray & bit) {
      for (Eigen::Index i = 0; i < n; ++i) row_sums[static_cast<std::size_t>(i)] += a(i, col);
    } else {
      for (Eigen::Index i = 0; i < n; ++i) row_sums[static_cast<std::size_t>(i)] -= a(i, col);
    }
    Scalar prod(1);
    for (const auto &s : row_sums) prod *= s;
    // (-1)^(n - |S|)
    if ((n - std::popcount(gray)) & 1) {
      total -= prod;
    } else {
      total += prod;
    }
  }
  return total;
}

/// Determinant by LU decomposition with partial pivoting. A singular
/// matrix yields exactly zero.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived> &a) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(a, "determinant");
  const Eigen::Index n = a.rows();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> lu = a;
  Scalar det(1);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    double best = std::abs(lu(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        pivot = i;
      }
    }
    if (best == 0.0) return Scalar(0);
    if (pivot != k) {
      lu.row(k).swap(lu.row(pivot));
      det = -det;
    }
    det *= lu(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Scalar f = lu(i, k) / lu(k, k);
      for (Eigen::Index j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return det;
}

/// Permutation sum weighted by eta^parity: permanent for bosons,
/// determinant for fermions.
template <typename Derived>
typename Derived::Scalar eta_sum(const Eigen::MatrixBase<Derived> &m, Statistics statistics) {
  return statistics.is_boson() ? permanent(m) : determinant(m);
}

/// No-label transition amplitude <bra|ket>, expanded bilinearly over terms.
inline Complex inner_product(const NState &bra, const NState &ket) {
  bra.require_compatible(ket);
  Complex total{0.0, 0.0};
  for (const auto &b : bra.terms()) {
    for (const auto &k : ket.terms()) {
      total += std::conj(b.coefficient) * k.coefficient * eta_sum(overlap_matrix(b.factors, k.factors), ket.statistics());
    }
  }
  return total;
}

/// sqrt(<s|s>); tiny negative round-off is clamped to zero.
inline double norm(const NState &state) {
  const double n2 = inner_product(state, state).real();
  if (n2 < -kEqualTolerance) {
    throw Error(ErrorCode::kStructural, "negative squared norm " + std::to_string(n2));
  }
  return n2 > 0.0 ? std::sqrt(n2) : 0.0;
}

inline NState normalize(const NState &state) {
  const double n = norm(state);
  if (n < kZeroTolerance) throw Error(ErrorCode::kDegenerateState, "cannot normalize a zero-norm state");
  return state.scaled(1.0 / n);
}

}  // namespace nolabel

#endif  // NOLABEL_KERNELS_HPP
