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

#ifndef NOLABEL_OPERATORS_HPP
#define NOLABEL_OPERATORS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nolabel/assignments.hpp"
#include "nolabel/basis.hpp"
#include "nolabel/common.hpp"
#include "nolabel/kernels.hpp"
#include "nolabel/state.hpp"

namespace nolabel {

/// Probability amplitude modulus |<X|psi>| of finding psi in region X:
/// the Euclidean norm of psi restricted to the region's modes, summed over
/// internal configurations. A region spanning every mode counts as 1.
inline double region_amplitude(const Region &region, const SingleParticleState &psi) {
  if (region.covers_all()) return 1.0;
  return std::sqrt(psi.weight_in(region));
}

inline CMatrix kron(const CMatrix &a, const CMatrix &b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

inline SingleParticleState apply_matrix(const CMatrix &op, const SingleParticleState &psi) {
  if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != psi.basis()->dim()) {
    throw Error(ErrorCode::kBasisMismatch, "operator dimension does not match the single-particle basis");
  }
  return SingleParticleState(psi.basis(), op * psi.amplitudes());
}

/// Unitary acting on one particle's (spatial x internal) space.
class SingleParticleUnitary {
 public:
  SingleParticleUnitary(BasisPtr basis, CMatrix matrix, std::string label = {})
      : basis_(std::move(basis)), matrix_(std::move(matrix)), label_(std::move(label)) {
    const auto d = static_cast<Eigen::Index>(basis_->dim());
    if (matrix_.rows() != d || matrix_.cols() != d) {
      throw Error(ErrorCode::kBasisMismatch, "unitary '" + label_ + "' has wrong dimension");
    }
    const double dev = (matrix_.adjoint() * matrix_ - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (dev > kEqualTolerance) {
      throw Error(ErrorCode::kInvalidArgument, "matrix '" + label_ + "' is not unitary (deviation " +
                                                   std::to_string(dev) + ")");
    }
  }

  static SingleParticleUnitary identity(const BasisPtr &basis) {
    const auto d = static_cast<Eigen::Index>(basis->dim());
    return SingleParticleUnitary(basis, CMatrix::Identity(d, d), "identity");
  }

  /// Spatial unitary (num_modes x num_modes) tensored with identity on internal dofs.
  static SingleParticleUnitary spatial(const BasisPtr &basis, const CMatrix &spatial_unitary, std::string label = "spatial") {
    const auto k = static_cast<Eigen::Index>(basis->internal_size());
    return SingleParticleUnitary(basis, kron(spatial_unitary, CMatrix::Identity(k, k)),
                                 std::move(label));
  }

  /// Identity on spatial modes tensored with an internal unitary.
  static SingleParticleUnitary internal(const BasisPtr &basis, const CMatrix &internal_unitary,
                                        std::string label = "internal") {
    const auto m = static_cast<Eigen::Index>(basis->num_modes());
    return SingleParticleUnitary(basis, kron(CMatrix::Identity(m, m), internal_unitary),
                                 std::move(label));
  }

  /// Internal unitary applied only on the given modes, identity elsewhere.
  static SingleParticleUnitary internal_on(const BasisPtr &basis, const Region &where, const CMatrix &internal_unitary,
                                           std::string label = "internal") {
    const auto d = static_cast<Eigen::Index>(basis->dim());
    const auto k = static_cast<Eigen::Index>(basis->internal_size());
    CMatrix u = CMatrix::Identity(d, d);
    for (auto m : where.modes()) {
      const auto off = static_cast<Eigen::Index>(basis->index(m, 0));
      u.block(off, off, k, k) = internal_unitary;
    }
    return SingleParticleUnitary(basis, std::move(u), std::move(label));
  }

  /// Spatial unitary sending mode `from` to the normalized mode profile
  /// `target` (one amplitude per mode). Built as a phase-adjusted
  /// Householder reflection, so it is unitary for any unit target.
  static SingleParticleUnitary transfer(const BasisPtr &basis, const std::string &from, const CVector &target,
                                        std::string label = "transfer") {
    const auto m = static_cast<Eigen::Index>(basis->num_modes());
    if (target.size() != m) throw Error(ErrorCode::kBasisMismatch, "transfer target has wrong number of modes");
    const double tn = target.norm();
    if (std::abs(tn - 1.0) > kEqualTolerance) {
      throw Error(ErrorCode::kInvalidArgument, "transfer target must be normalized (norm " + std::to_string(tn) + ")");
    }
    const auto src = static_cast<Eigen::Index>(basis->mode_index(from));
    CVector e = CVector::Zero(m);
    e[src] = 1.0;
    const Complex proj = target[src];
    const Complex phase = std::abs(proj) > kZeroTolerance ? proj / std::abs(proj) : Complex{1.0, 0.0};
    const CVector w = phase * e - target;
    CMatrix u = CMatrix::Identity(m, m);
    if (w.norm() > kZeroTolerance) u -= 2.0 * (w * w.adjoint()) / w.squaredNorm();
    u *= phase;
    return spatial(basis, u, std::move(label));
  }

  /// Swaps two spatial modes.
  static SingleParticleUnitary swap_modes(const BasisPtr &basis, const std::string &a, const std::string &b,
                                          std::string label = "swap") {
    const auto m = static_cast<Eigen::Index>(basis->num_modes());
    CMatrix p = CMatrix::Identity(m, m);
    p.row(static_cast<Eigen::Index>(basis->mode_index(a))).swap(p.row(static_cast<Eigen::Index>(basis->mode_index(b))));
    return spatial(basis, p, std::move(label));
  }

  /// this * other (other acts first).
  SingleParticleUnitary then_after(const SingleParticleUnitary &other) const {
    require_same_basis(basis_, other.basis_);
    return SingleParticleUnitary(basis_, matrix_ * other.matrix_, label_ + "*" + other.label_);
  }

  const BasisPtr &basis() const { return basis_; }
  const CMatrix &matrix() const { return matrix_; }
  const std::string &label() const { return label_; }

  SingleParticleState operator()(const SingleParticleState &psi) const { return apply_matrix(matrix_, psi); }

 private:
  BasisPtr basis_;
  CMatrix matrix_;
  std::string label_;
};

/// One (unitary, region of action) pair per particle.
struct DeformationSpec {
  struct Pair {
    SingleParticleUnitary unitary;
    Region region;
  };
  std::vector<Pair> pairs;

  std::size_t size() const { return pairs.size(); }
};

/// Spatially localized single-particle operator acting on an N-particle
/// state: each factor is acted on in turn, weighted by its amplitude
/// modulus in the region.
inline NState localized_apply(const CMatrix &op, const Region &region, const NState &state) {
  std::vector<ProductKet> out;
  bool any_support = false;
  for (const auto &term : state.terms()) {
    for (std::size_t i = 0; i < term.size(); ++i) {
      const double w = region_amplitude(region, term.factors[i]);
      if (!(w > kZeroTolerance)) continue;
      any_support = true;
      auto factors = term.factors;
      factors[i] = apply_matrix(op, factors[i]);
      out.emplace_back(term.coefficient * w, std::move(factors));
    }
  }
  if (!any_support) throw Error(ErrorCode::kNoParticleInRegion, "no particle has support in the operator's region");
  return canonicalize(NState(state.statistics(), state.basis(), state.particles(), std::move(out)));
}

/// Applies a deformation. Every term contributes the sum over assignments
/// alpha of |<X_1|psi_a1> ... <X_N|psi_aN>| eta^P(alpha) |U_1 psi_a1, ..., U_N psi_aN>.
///
/// Assignments with a vanishing weight are pruned while enumerating, so a
/// distinguishable input whose factors each sit in exactly one region costs
/// a single product ket. The result is canonicalized but not normalized.
///
/// Note: U_i acts on the whole factor psi_a, not on its restriction to X_i.
/// For factors straddling several regions this is a literal reading of the
/// defining sum, and the amplitude phases inside the regions are dropped.
inline NState deform(const DeformationSpec &spec, const NState &state) {
  const std::size_t n = state.particles();
  if (spec.size() != n) {
    throw Error(ErrorCode::kStructural, "deformation has " + std::to_string(spec.size()) + " pairs for " +
                                            std::to_string(n) + " particles");
  }
  for (const auto &p : spec.pairs) require_same_basis(p.unitary.basis(), state.basis());

  const Statistics stats = state.statistics();
  std::vector<ProductKet> out;
  for (std::size_t t = 0; t < state.terms().size(); ++t) {
    const auto &term = state.terms()[t];
    RMatrix weights(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        weights(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            region_amplitude(spec.pairs[i].region, term.factors[j]);
      }
    }
    std::vector<std::optional<SingleParticleState>> transformed(n * n);
    bool any = false;
    detail::for_each_assignment(weights, kZeroTolerance, [&](const std::vector<std::size_t> &alpha, int parity, double w) {
      any = true;
      std::vector<SingleParticleState> factors;
      factors.reserve(n);
      for (std::size_t i = 0; i < n; ++i) {
        auto &cached = transformed[i * n + alpha[i]];
        if (!cached) cached = spec.pairs[i].unitary(term.factors[alpha[i]]);
        factors.push_back(*cached);
      }
      out.emplace_back(term.coefficient * w * stats.sign(parity), std::move(factors));
    });
    if (!any) {
      throw Error(ErrorCode::kDeformationUndefined,
                  "term " + std::to_string(t) + ": no assignment puts a particle in every region of action");
    }
  }
  return canonicalize(NState(stats, state.basis(), n, std::move(out)));
}

/// Deforms every member and renormalizes the mixture as
/// D rho D^dagger / Tr[D^dagger D rho]. Members annihilated by the
/// deformation drop out.
inline Ensemble deform_ensemble(const DeformationSpec &spec, const Ensemble &rho) {
  struct Pending {
    double weight;
    NState state;
  };
  std::vector<Pending> pending;
  double trace = 0.0;
  for (const auto &m : rho.members()) {
    if (m.weight == 0.0) continue;
    const double in2 = inner_product(m.state, m.state).real();
    if (in2 < kZeroTolerance) throw Error(ErrorCode::kDegenerateState, "ensemble member has zero norm");
    NState d = deform(spec, m.state);
    const double out2 = d.terms().empty() ? 0.0 : inner_product(d, d).real();
    const double w = m.weight * out2 / in2;
    trace += w;
    if (out2 / in2 > kZeroTolerance) pending.push_back({w, std::move(d)});
  }
  if (trace < kZeroTolerance) {
    throw Error(ErrorCode::kDegenerateState, "deformed ensemble has vanishing trace");
  }
  std::vector<Ensemble::Member> members;
  members.reserve(pending.size());
  for (auto &p : pending) members.push_back({p.weight / trace, normalize(p.state)});
  return Ensemble(std::move(members));
}

struct UnitarityReport {
  double max_deviation = 0.0;
  std::vector<double> deviations;
};

/// Diagnostic: max |norm(D s) - norm(s)| over the probes.
inline UnitarityReport check_unitarity(const DeformationSpec &spec, const std::vector<NState> &probes) {
  UnitarityReport report;
  for (const auto &s : probes) {
    const NState d = deform(spec, s);
    const double dn = d.terms().empty() ? 0.0 : norm(d);
    const double dev = std::abs(dn - norm(s));
    report.deviations.push_back(dev);
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  return report;
}

}  // namespace nolabel

#endif  // NOLABEL_OPERATORS_HPP
