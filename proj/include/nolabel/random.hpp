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

#ifndef NOLABEL_RANDOM_HPP
#define NOLABEL_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "nolabel/basis.hpp"
#include "nolabel/common.hpp"
#include "nolabel/state.hpp"

namespace nolabel {

/// Seeded generator for random test inputs. Gaussian entries give
/// Haar-distributed directions after normalization.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double gaussian() { return normal_(engine_); }
  Complex complex_gaussian() { return {gaussian(), gaussian()}; }
  Complex unit_phase() { return std::polar(1.0, uniform(-std::numbers::pi, std::numbers::pi)); }

  CVector vector(Eigen::Index n) {
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = complex_gaussian();
    return v;
  }

  CVector unit_vector(Eigen::Index n) {
    CVector v = vector(n);
    return v / v.norm();
  }

  CMatrix matrix(Eigen::Index rows, Eigen::Index cols) {
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = complex_gaussian();
    }
    return m;
  }

  /// Haar-random unitary via QR with phase correction.
  CMatrix unitary(Eigen::Index n) {
    Eigen::HouseholderQR<CMatrix> qr(matrix(n, n));
    CMatrix q = qr.householderQ();
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
      const Complex d = r(i, i);
      if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
    }
    return q;
  }

  SingleParticleState state(const BasisPtr &basis) {
    return SingleParticleState(basis, unit_vector(static_cast<Eigen::Index>(basis->dim())));
  }

  /// Normalized state supported only on the listed modes.
  SingleParticleState state_on(const BasisPtr &basis, const std::vector<std::size_t> &modes) {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(basis->dim()));
    for (auto m : modes) {
      for (std::size_t c = 0; c < basis->internal_size(); ++c) {
        v[static_cast<Eigen::Index>(basis->index(m, c))] = complex_gaussian();
      }
    }
    return SingleParticleState(basis, v / v.norm());
  }

  ProductKet product_ket(const BasisPtr &basis, std::size_t particles) {
    std::vector<SingleParticleState> fs;
    for (std::size_t i = 0; i < particles; ++i) fs.push_back(state(basis));
    return ProductKet(complex_gaussian(), std::move(fs));
  }

  NState superposition(Statistics statistics, const BasisPtr &basis, std::size_t particles, std::size_t terms) {
    std::vector<ProductKet> ts;
    for (std::size_t t = 0; t < terms; ++t) ts.push_back(product_ket(basis, particles));
    return NState(statistics, basis, particles, std::move(ts));
  }

  std::mt19937_64 &engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace nolabel

#endif  // NOLABEL_RANDOM_HPP
