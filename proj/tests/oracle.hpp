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

// Reference implementations used only by the tests. Everything here is
// brute force and shares no code with the library beyond the value types.

#ifndef NOLABEL_TESTS_ORACLE_HPP
#define NOLABEL_TESTS_ORACLE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "nolabel/state.hpp"

namespace oracle {

using nolabel::CMatrix;
using nolabel::Complex;
using nolabel::CVector;

inline int parity(const std::vector<std::size_t> &p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j];
  }
  return inversions & 1;
}

inline std::vector<std::vector<std::size_t>> permutations(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline double factorial(std::size_t n) {
  double f = 1.0;
  for (std::size_t k = 2; k <= n; ++k) f *= static_cast<double>(k);
  return f;
}

inline Complex permutation_sum(const CMatrix &m, int eta) {
  Complex total = 0.0;
  for (const auto &p : permutations(static_cast<std::size_t>(m.rows()))) {
    Complex prod = 1.0;
    for (std::size_t i = 0; i < p.size(); ++i) prod *= m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p[i]));
    total += (eta < 0 && parity(p)) ? -prod : prod;
  }
  return total;
}

inline Complex naive_permanent(const CMatrix &m) { return permutation_sum(m, 1); }
inline Complex naive_determinant(const CMatrix &m) { return permutation_sum(m, -1); }

inline Complex dot(const nolabel::SingleParticleState &a, const nolabel::SingleParticleState &b) {
  Complex s = 0.0;
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) s += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
  return s;
}

// Labeled tensor-product vector of one product ket (particle 0 most significant).
inline CVector tensor(const nolabel::ProductKet &k) {
  CVector v(1);
  v[0] = k.coefficient;
  for (const auto &f : k.factors) {
    const CVector &a = f.amplitudes();
    CVector next(v.size() * a.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      for (Eigen::Index j = 0; j < a.size(); ++j) next[i * a.size() + j] = v[i] * a[j];
    }
    v = std::move(next);
  }
  return v;
}

// (1/N!) sum_P eta^P P applied to a labeled N-particle vector over dimension d.
inline CVector symmetrize(const CVector &v, std::size_t n, std::size_t d, int eta) {
  CVector out = CVector::Zero(v.size());
  const auto perms = permutations(n);
  std::vector<std::size_t> digits(n), moved(n);
  for (Eigen::Index idx = 0; idx < v.size(); ++idx) {
    std::size_t rem = static_cast<std::size_t>(idx);
    for (std::size_t k = n; k-- > 0;) {
      digits[k] = rem % d;
      rem /= d;
    }
    for (const auto &p : perms) {
      for (std::size_t k = 0; k < n; ++k) moved[p[k]] = digits[k];
      std::size_t target = 0;
      for (std::size_t k = 0; k < n; ++k) target = target * d + moved[k];
      out[static_cast<Eigen::Index>(target)] += ((eta < 0 && parity(p)) ? -1.0 : 1.0) * v[idx];
    }
  }
  return out / factorial(n);
}

inline CVector first_quantized(const nolabel::NState &s) {
  const std::size_t d = s.basis()->dim();
  CVector v = CVector::Zero(static_cast<Eigen::Index>(std::pow(d, s.particles())));
  for (const auto &t : s.terms()) v += tensor(t);
  return symmetrize(v, s.particles(), d, s.statistics().eta());
}

// No-label amplitude as N! <S phi|S psi>.
inline Complex inner_product(const nolabel::NState &bra, const nolabel::NState &ket) {
  return factorial(ket.particles()) * first_quantized(bra).dot(first_quantized(ket));
}

// Wootters concurrence from the eigenvalues of rho * rho_tilde.
inline double concurrence(const CMatrix &rho) {
  CMatrix yy = CMatrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(3, 0) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  const CMatrix tilde = yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<CMatrix> es(rho * tilde);
  std::vector<double> lam;
  for (Eigen::Index i = 0; i < 4; ++i) lam.push_back(std::sqrt(std::max(0.0, es.eigenvalues()[i].real())));
  std::sort(lam.rbegin(), lam.rend());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

inline double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

}  // namespace oracle

#endif  // NOLABEL_TESTS_ORACLE_HPP
