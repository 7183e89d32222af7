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

#ifndef NOLABEL_LABELED_HPP
#define NOLABEL_LABELED_HPP

#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "nolabel/common.hpp"

namespace nolabel {

namespace detail {

inline std::size_t product_of(const std::vector<std::size_t> &dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

}  // namespace detail

/// Pure state in a tensor-product space with one factor per detection
/// region. Index order is mixed radix over `dims`, first factor most
/// significant.
struct LabeledState {
  std::vector<std::size_t> dims;
  CVector amplitudes;

  LabeledState(std::vector<std::size_t> d, CVector a) : dims(std::move(d)), amplitudes(std::move(a)) {
    if (static_cast<std::size_t>(amplitudes.size()) != detail::product_of(dims)) {
      throw Error(ErrorCode::kStructural, "labeled amplitudes do not match factor dimensions");
    }
  }

  std::size_t index(const std::vector<std::size_t> &local) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + local[k];
    return idx;
  }

  Complex amplitude(const std::vector<std::size_t> &local) const {
    return amplitudes[static_cast<Eigen::Index>(index(local))];
  }

  double norm() const { return amplitudes.norm(); }
};

/// Density matrix over a labeled tensor-product space.
struct LabeledDensityMatrix {
  std::vector<std::size_t> dims;
  CMatrix matrix;

  LabeledDensityMatrix(std::vector<std::size_t> d, CMatrix m) : dims(std::move(d)), matrix(std::move(m)) {
    const auto n = static_cast<Eigen::Index>(detail::product_of(dims));
    if (matrix.rows() != n || matrix.cols() != n) {
      throw Error(ErrorCode::kStructural, "density matrix does not match factor dimensions");
    }
  }

  static LabeledDensityMatrix from_pure(const LabeledState &psi) {
    return LabeledDensityMatrix(psi.dims, psi.amplitudes * psi.amplitudes.adjoint());
  }

  Complex trace() const { return matrix.trace(); }

  /// Throws unless Hermitian, unit trace and positive semidefinite within tolerance.
  void validate(double tol = kEqualTolerance) const {
    if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > tol) {
      throw Error(ErrorCode::kStructural, "density matrix is not Hermitian");
    }
    if (std::abs(trace() - 1.0) > tol) throw Error(ErrorCode::kStructural, "density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix);
    if (es.eigenvalues().minCoeff() < -tol) throw Error(ErrorCode::kStructural, "density matrix is not PSD");
  }
};

}  // namespace nolabel

#endif  // NOLABEL_LABELED_HPP
