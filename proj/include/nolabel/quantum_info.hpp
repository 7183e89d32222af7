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

#ifndef NOLABEL_QUANTUM_INFO_HPP
#define NOLABEL_QUANTUM_INFO_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "nolabel/common.hpp"
#include "nolabel/kernels.hpp"
#include "nolabel/labeled.hpp"
#include "nolabel/operators.hpp"
#include "nolabel/presets.hpp"
#include "nolabel/state.hpp"

namespace nolabel {

namespace detail {

inline void require_two_qubits(const CMatrix &rho, const char *what) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + " needs a 4x4 two-qubit density matrix, got " +
                                                 std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()));
  }
}

inline CMatrix sigma_y_y() {
  CMatrix y(2, 2);
  y << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return kron(y, y);
}

// Hermitian square root with eigenvalues below `floor` dropped.
inline CMatrix psd_sqrt(const CMatrix &rho, double floor) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev[i] = ev[i] > floor ? std::sqrt(ev[i]) : 0.0;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

inline double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

}  // namespace detail

/// Wootters concurrence max(0, l1 - l2 - l3 - l4), with l_i the square
/// roots of the eigenvalues of rho (Y x Y) rho* (Y x Y) in decreasing order.
///
/// The l_i are evaluated as singular values of sqrt(rho) (Y x Y) sqrt(rho)*,
/// which avoids taking square roots of round-off sized eigenvalues.
inline double concurrence(const CMatrix &rho) {
  detail::require_two_qubits(rho, "concurrence");
  const double tr = rho.trace().real();
  const CMatrix s = detail::psd_sqrt(rho, 1e-14 * std::max(tr, 1.0));
  const CMatrix a = s * detail::sigma_y_y() * s.conjugate();
  Eigen::JacobiSVD<CMatrix> svd(a);
  auto lam = svd.singularValues();  // decreasing
  const double c = lam[0] - lam[1] - lam[2] - lam[3];
  return std::clamp(c, 0.0, 1.0);
}

inline double concurrence(const LabeledDensityMatrix &rho) { return concurrence(rho.matrix); }

/// Pure-state concurrence |<psi| Y x Y |psi*>|.
inline double concurrence(const LabeledState &psi) {
  if (psi.dims != std::vector<std::size_t>{2, 2}) {
    throw Error(ErrorCode::kInvalidArgument, "concurrence needs a two-qubit labeled state");
  }
  const CVector v = psi.amplitudes / psi.norm();
  return std::clamp(std::abs(v.dot(detail::sigma_y_y() * v.conjugate())), 0.0, 1.0);
}

inline double entanglement_of_formation_from_concurrence(double c) {
  c = std::clamp(c, 0.0, 1.0);
  return detail::binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

inline double entanglement_of_formation(const CMatrix &rho) {
  return entanglement_of_formation_from_concurrence(concurrence(rho));
}
inline double entanglement_of_formation(const LabeledDensityMatrix &rho) { return entanglement_of_formation(rho.matrix); }

/// -sum lambda log2 lambda over the spectrum.
inline double von_neumann_entropy(const CMatrix &rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()[i];
    if (l < -kEqualTolerance) {
      throw Error(ErrorCode::kStructural, "density matrix has negative eigenvalue " + std::to_string(l));
    }
    if (l > kZeroTolerance) s -= l * std::log2(l);
  }
  return std::max(s, 0.0);
}
inline double von_neumann_entropy(const LabeledDensityMatrix &rho) { return von_neumann_entropy(rho.matrix); }

/// Reduced density matrix of factor `keep`.
inline LabeledDensityMatrix partial_trace(const LabeledDensityMatrix &rho, std::size_t keep) {
  if (keep >= rho.dims.size()) throw Error(ErrorCode::kInvalidArgument, "partial trace factor out of range");
  const std::size_t dk = rho.dims[keep];
  std::size_t inner = 1;
  for (std::size_t k = keep + 1; k < rho.dims.size(); ++k) inner *= rho.dims[k];
  const std::size_t outer = detail::product_of(rho.dims) / (dk * inner);
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  for (std::size_t a = 0; a < dk; ++a) {
    for (std::size_t b = 0; b < dk; ++b) {
      Complex sum{0.0, 0.0};
      for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t i = 0; i < inner; ++i) {
          const auto r = static_cast<Eigen::Index>((o * dk + a) * inner + i);
          const auto c = static_cast<Eigen::Index>((o * dk + b) * inner + i);
          sum += rho.matrix(r, c);
        }
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = sum;
    }
  }
  return LabeledDensityMatrix({dk}, std::move(out));
}

/// <target| rho |target> for a normalized pure target.
inline double fidelity(const LabeledDensityMatrix &rho, const LabeledState &target) {
  const CVector t = target.amplitudes / target.norm();
  return std::clamp(t.dot(rho.matrix * t).real(), 0.0, 1.0);
}

inline double purity(const LabeledDensityMatrix &rho) { return (rho.matrix * rho.matrix).trace().real(); }

enum class ChannelKind { kPhaseDamping, kDepolarizing, kAmplitudeDamping };

inline const char *channel_name(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::kPhaseDamping: return "phase_damping";
    case ChannelKind::kDepolarizing: return "depolarizing";
    case ChannelKind::kAmplitudeDamping: return "amplitude_damping";
  }
  return "unknown";
}

inline std::optional<ChannelKind> parse_channel(const std::string &name) {
  if (name == "phase_damping") return ChannelKind::kPhaseDamping;
  if (name == "depolarizing") return ChannelKind::kDepolarizing;
  if (name == "amplitude_damping") return ChannelKind::kAmplitudeDamping;
  return std::nullopt;
}

/// Single-qubit channel in Kraus form. Basis order is (up, down).
///   phase_damping      {diag(1, sqrt(1-q)), diag(0, sqrt(q))}
///   depolarizing       rho -> (1-q) rho + q I/2, via {sqrt(1-3q/4) I, sqrt(q/4) X, sqrt(q/4) Y, sqrt(q/4) Z}
///   amplitude_damping  down decays to up: {diag(1, sqrt(1-q)), sqrt(q)|up><down|}
struct KrausChannel {
  ChannelKind kind;
  double strength;
  std::vector<CMatrix> kraus;

  static KrausChannel make(ChannelKind kind, double q) {
    if (!(q >= 0.0 && q <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "channel strength must lie in [0, 1], got " + std::to_string(q));
    }
    KrausChannel ch{kind, q, {}};
    auto m = [](Complex a, Complex b, Complex c, Complex d) {
      CMatrix k(2, 2);
      k << a, b, c, d;
      return k;
    };
    const Complex i{0.0, 1.0};
    switch (kind) {
      case ChannelKind::kPhaseDamping:
        ch.kraus = {m(1, 0, 0, std::sqrt(1 - q)), m(0, 0, 0, std::sqrt(q))};
        break;
      case ChannelKind::kDepolarizing: {
        const double a = std::sqrt(1 - 0.75 * q);
        const double b = std::sqrt(0.25 * q);
        ch.kraus = {m(a, 0, 0, a), m(0, b, b, 0), m(0, -i * b, i * b, 0), m(b, 0, 0, -b)};
        break;
      }
      case ChannelKind::kAmplitudeDamping:
        ch.kraus = {m(1, 0, 0, std::sqrt(1 - q)), m(0, std::sqrt(q), 0, 0)};
        break;
    }
    CMatrix sum = CMatrix::Zero(2, 2);
    for (const auto &k : ch.kraus) sum += k.adjoint() * k;
    if ((sum - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() > kEqualTolerance) {
      throw Error(ErrorCode::kStructural, "Kraus set is not trace preserving");
    }
    return ch;
  }
};

/// Applies the channel to qubit 0 or 1 of a two-qubit density matrix.
inline CMatrix apply_local_channel(const KrausChannel &channel, std::size_t qubit, const CMatrix &rho) {
  detail::require_two_qubits(rho, "local channel");
  if (qubit > 1) throw Error(ErrorCode::kInvalidArgument, "qubit index must be 0 or 1");
  const CMatrix id = CMatrix::Identity(2, 2);
  CMatrix out = CMatrix::Zero(4, 4);
  for (const auto &k : channel.kraus) {
    const CMatrix full = qubit == 0 ? kron(k, id) : kron(id, k);
    out += full * rho * full.adjoint();
  }
  return out;
}

inline LabeledDensityMatrix apply_local_channel(const KrausChannel &channel, std::size_t qubit,
                                                const LabeledDensityMatrix &rho) {
  return LabeledDensityMatrix(rho.dims, apply_local_channel(channel, qubit, rho.matrix));
}

/// Isomorphism between two-particle no-label states with one particle on
/// spatial mode A and one on mode B, and the labeled space (A qubit) x (B qubit).
class LocalQubitMap {
 public:
  LocalQubitMap(BasisPtr basis, const std::string &mode_a, const std::string &mode_b)
      : basis_(std::move(basis)), a_(basis_->mode_index(mode_a)), b_(basis_->mode_index(mode_b)) {
    if (a_ == b_) throw Error(ErrorCode::kChannelUndefined, "qubit modes must be distinct");
    if (basis_->internal_size() != 2) {
      throw Error(ErrorCode::kChannelUndefined, "local channels need a spin-1/2 internal space");
    }
  }

  CVector to_labeled(const NState &state) const {
    if (state.particles() != 2) throw Error(ErrorCode::kChannelUndefined, "local channels need two particles");
    require_same_basis(state.basis(), basis_);
    CVector v = CVector::Zero(4);
    for (const auto &t : state.terms()) {
      auto where = [&](const SingleParticleState &f) -> int {
        const auto sup = f.support();
        if (sup.size() == 1 && sup[0] == a_) return 0;
        if (sup.size() == 1 && sup[0] == b_) return 1;
        return -1;
      };
      const int w0 = where(t.factors[0]);
      const int w1 = where(t.factors[1]);
      if (w0 < 0 || w1 < 0 || w0 == w1) {
        throw Error(ErrorCode::kChannelUndefined,
                    "particles are not on spatially disjoint single modes (post-deformation noise is not supported)");
      }
      const auto &fa = w0 == 0 ? t.factors[0] : t.factors[1];
      const auto &fb = w0 == 0 ? t.factors[1] : t.factors[0];
      const double sign = w0 == 0 ? 1.0 : state.statistics().sign(1);
      CVector sa(2), sb(2);
      for (std::size_t c = 0; c < 2; ++c) {
        sa[static_cast<Eigen::Index>(c)] = fa.amplitude(a_, c);
        sb[static_cast<Eigen::Index>(c)] = fb.amplitude(b_, c);
      }
      v += (t.coefficient * sign) * kron(sa, sb);
    }
    return v;
  }

  NState from_labeled(Statistics statistics, const CVector &v) const {
    std::vector<ProductKet> terms;
    for (std::size_t sa = 0; sa < 2; ++sa) {
      for (std::size_t sb = 0; sb < 2; ++sb) {
        const Complex c = v[static_cast<Eigen::Index>(2 * sa + sb)];
        if (is_zero(c)) continue;
        terms.emplace_back(c, std::vector<SingleParticleState>{
                                  SingleParticleState::basis_vector(basis_, basis_->modes()[a_], sa),
                                  SingleParticleState::basis_vector(basis_, basis_->modes()[b_], sb)});
      }
    }
    if (terms.empty()) throw Error(ErrorCode::kDegenerateState, "labeled vector is zero");
    return canonicalize(NState(statistics, basis_, 2, std::move(terms)));
  }

  /// Density matrix of the ensemble in the labeled space.
  CMatrix density(const Ensemble &rho) const {
    CMatrix out = CMatrix::Zero(4, 4);
    for (const auto &m : rho.members()) {
      const CVector v = to_labeled(m.state);
      const double n2 = v.squaredNorm();
      if (n2 < kZeroTolerance) throw Error(ErrorCode::kDegenerateState, "ensemble member has zero norm");
      out += (m.weight / n2) * (v * v.adjoint());
    }
    return out;
  }

  /// Spectral decomposition of rho as an ensemble of no-label states.
  Ensemble ensemble(Statistics statistics, const CMatrix &rho) const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
    std::vector<Ensemble::Member> members;
    double total = 0.0;
    for (Eigen::Index i = es.eigenvalues().size(); i-- > 0;) {
      const double w = es.eigenvalues()[i];
      if (w <= kZeroTolerance) continue;
      members.push_back({w, from_labeled(statistics, es.eigenvectors().col(i))});
      total += w;
    }
    if (members.empty()) throw Error(ErrorCode::kDegenerateState, "density matrix is zero");
    for (auto &m : members) m.weight /= total;
    return Ensemble(std::move(members));
  }

 private:
  BasisPtr basis_;
  std::size_t a_;
  std::size_t b_;
};

/// Local noise on the particle sitting on mode A (qubit 0) or mode B
/// (qubit 1) of a distinguishable two-particle ensemble.
inline Ensemble apply_local_channel(const KrausChannel &channel, std::size_t qubit, const Ensemble &rho,
                                    const LocalQubitMap &map) {
  const CMatrix out = apply_local_channel(channel, qubit, map.density(rho));
  return map.ensemble(rho.statistics(), out);
}

}  // namespace nolabel

#endif  // NOLABEL_QUANTUM_INFO_HPP
