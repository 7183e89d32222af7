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

#ifndef NOLABEL_BASIS_HPP
#define NOLABEL_BASIS_HPP

#include <algorithm>
#include <cstddef>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "nolabel/common.hpp"

namespace nolabel {

/// Exchange statistics of a species of identical particles. The exchange
/// factor is +1 for bosons and -1 for fermions; no other value exists.
class Statistics {
 public:
  static constexpr Statistics boson() { return Statistics(1); }
  static constexpr Statistics fermion() { return Statistics(-1); }

  constexpr int eta() const { return eta_; }
  constexpr bool is_boson() const { return eta_ == 1; }
  constexpr bool is_fermion() const { return eta_ == -1; }

  /// eta^parity, with parity 0 (even) or 1 (odd).
  constexpr double sign(int parity) const { return (parity & 1) && eta_ < 0 ? -1.0 : 1.0; }

  const char *name() const { return is_boson() ? "boson" : "fermion"; }

  friend constexpr bool operator==(Statistics a, Statistics b) { return a.eta_ == b.eta_; }

 private:
  constexpr explicit Statistics(int eta) : eta_(eta) {}
  int eta_;
};

inline std::optional<Statistics> parse_statistics(const std::string &name) {
  if (name == "boson" || name == "bosons") return Statistics::boson();
  if (name == "fermion" || name == "fermions") return Statistics::fermion();
  return std::nullopt;
}

struct InternalDof {
  std::string name;
  std::size_t dim = 1;
};

/// Orthonormal single-particle basis |mode, internal configuration>.
///
/// The flat index of a basis vector is mode_index * internal_size() +
/// config_index. Internal configurations use mixed-radix order over the
/// declared degrees of freedom, the first dof being most significant.
class ModeBasis {
 public:
  ModeBasis(std::vector<std::string> spatial_modes, std::vector<InternalDof> internal_dofs)
      : modes_(std::move(spatial_modes)), dofs_(std::move(internal_dofs)) {
    if (modes_.empty()) throw Error(ErrorCode::kStructural, "mode basis needs at least one spatial mode");
    std::unordered_set<std::string> seen;
    for (const auto &m : modes_) {
      if (!seen.insert(m).second) throw Error(ErrorCode::kStructural, "duplicate spatial mode '" + m + "'");
    }
    std::unordered_set<std::string> dof_seen;
    internal_size_ = 1;
    for (const auto &d : dofs_) {
      if (d.dim < 1) throw Error(ErrorCode::kStructural, "internal dof '" + d.name + "' has cardinality 0");
      if (!dof_seen.insert(d.name).second) {
        throw Error(ErrorCode::kStructural, "duplicate internal dof '" + d.name + "'");
      }
      internal_size_ *= d.dim;
    }
  }

  static std::shared_ptr<const ModeBasis> make(std::vector<std::string> spatial_modes,
                                               std::vector<InternalDof> internal_dofs = {}) {
    return std::make_shared<const ModeBasis>(std::move(spatial_modes), std::move(internal_dofs));
  }

  /// Spin-1/2 basis over the given spatial modes. Spin index 0 is up, 1 is down.
  static std::shared_ptr<const ModeBasis> spin_half(std::vector<std::string> spatial_modes) {
    return make(std::move(spatial_modes), {{"spin", 2}});
  }

  const std::vector<std::string> &modes() const { return modes_; }
  const std::vector<InternalDof> &internal_dofs() const { return dofs_; }
  std::size_t num_modes() const { return modes_.size(); }
  std::size_t internal_size() const { return internal_size_; }
  std::size_t dim() const { return modes_.size() * internal_size_; }

  std::size_t index(std::size_t mode, std::size_t config) const { return mode * internal_size_ + config; }

  std::optional<std::size_t> find_mode(const std::string &name) const {
    auto it = std::find(modes_.begin(), modes_.end(), name);
    if (it == modes_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - modes_.begin());
  }

  std::size_t mode_index(const std::string &name) const {
    auto idx = find_mode(name);
    if (!idx) throw Error(ErrorCode::kBasisMismatch, "unknown spatial mode '" + name + "'");
    return *idx;
  }

  std::optional<std::size_t> find_dof(const std::string &name) const {
    for (std::size_t i = 0; i < dofs_.size(); ++i) {
      if (dofs_[i].name == name) return i;
    }
    return std::nullopt;
  }

  /// Value of dof `dof` inside internal configuration `config`.
  std::size_t dof_value(std::size_t config, std::size_t dof) const {
    std::size_t stride = 1;
    for (std::size_t i = dofs_.size(); i-- > dof + 1;) stride *= dofs_[i].dim;
    return (config / stride) % dofs_[dof].dim;
  }

  std::size_t config_index(const std::vector<std::size_t> &values) const {
    if (values.size() != dofs_.size()) {
      throw Error(ErrorCode::kBasisMismatch, "internal configuration has wrong number of dof values");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < dofs_.size(); ++i) {
      if (values[i] >= dofs_[i].dim) {
        throw Error(ErrorCode::kBasisMismatch, "value out of range for dof '" + dofs_[i].name + "'");
      }
      idx = idx * dofs_[i].dim + values[i];
    }
    return idx;
  }

  friend bool operator==(const ModeBasis &a, const ModeBasis &b) {
    if (a.modes_ != b.modes_ || a.dofs_.size() != b.dofs_.size()) return false;
    for (std::size_t i = 0; i < a.dofs_.size(); ++i) {
      if (a.dofs_[i].name != b.dofs_[i].name || a.dofs_[i].dim != b.dofs_[i].dim) return false;
    }
    return true;
  }

 private:
  std::vector<std::string> modes_;
  std::vector<InternalDof> dofs_;
  std::size_t internal_size_ = 1;
};

using BasisPtr = std::shared_ptr<const ModeBasis>;

inline bool same_basis(const BasisPtr &a, const BasisPtr &b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_basis(const BasisPtr &a, const BasisPtr &b) {
  if (!same_basis(a, b)) throw Error(ErrorCode::kBasisMismatch, "states live in different mode bases");
}

/// Nonempty set of spatial modes of a basis, stored as sorted mode indices.
class Region {
 public:
  Region(const ModeBasis &basis, const std::vector<std::string> &mode_names) {
    for (const auto &name : mode_names) modes_.push_back(basis.mode_index(name));
    finish(basis);
  }

  static Region from_indices(const ModeBasis &basis, std::vector<std::size_t> indices) {
    Region r;
    r.modes_ = std::move(indices);
    for (auto m : r.modes_) {
      if (m >= basis.num_modes()) throw Error(ErrorCode::kBasisMismatch, "region mode index out of range");
    }
    r.finish(basis);
    return r;
  }

  /// Region covering every spatial mode.
  static Region whole(const ModeBasis &basis) {
    std::vector<std::size_t> all(basis.num_modes());
    std::iota(all.begin(), all.end(), 0);
    return from_indices(basis, std::move(all));
  }

  const std::vector<std::size_t> &modes() const { return modes_; }
  std::size_t size() const { return modes_.size(); }
  bool contains(std::size_t mode) const { return std::binary_search(modes_.begin(), modes_.end(), mode); }
  bool covers_all() const { return modes_.size() == basis_modes_; }

  bool disjoint(const Region &other) const {
    for (auto m : modes_) {
      if (other.contains(m)) return false;
    }
    return true;
  }

  friend bool operator==(const Region &a, const Region &b) { return a.modes_ == b.modes_; }

 private:
  Region() = default;

  void finish(const ModeBasis &basis) {
    std::sort(modes_.begin(), modes_.end());
    modes_.erase(std::unique(modes_.begin(), modes_.end()), modes_.end());
    if (modes_.empty()) throw Error(ErrorCode::kStructural, "region must contain at least one mode");
    basis_modes_ = basis.num_modes();
  }

  std::vector<std::size_t> modes_;
  std::size_t basis_modes_ = 0;
};

inline void require_pairwise_disjoint(const std::vector<Region> &regions, const char *what) {
  for (std::size_t i = 0; i < regions.size(); ++i) {
    for (std::size_t j = i + 1; j < regions.size(); ++j) {
      if (!regions[i].disjoint(regions[j])) {
        throw Error(ErrorCode::kInvalidArgument, std::string(what) + ": regions " + std::to_string(i) +
                                                     " and " + std::to_string(j) + " overlap");
      }
    }
  }
}

}  // namespace nolabel

#endif  // NOLABEL_BASIS_HPP
