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

#ifndef NOLABEL_SCENARIO_PIPELINE_HPP
#define NOLABEL_SCENARIO_PIPELINE_HPP

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "nolabel/indistinguishability.hpp"
#include "nolabel/kernels.hpp"
#include "nolabel/operators.hpp"
#include "nolabel/presets.hpp"
#include "nolabel/quantum_info.hpp"
#include "nolabel/scenario/config.hpp"
#include "nolabel/slocc.hpp"
#include "nolabel/state.hpp"

namespace nolabel::scenario {

struct RunRecord {
  std::size_t index = 0;
  std::string statistics;
  std::string initial_state;
  std::string channel;
  std::string placement;
  double q = 0.0;
  std::string deformation;
  std::optional<Complex> l, lp, r, rp;
  std::optional<double> indistinguishability;
  std::optional<double> probability;
  std::optional<double> concurrence;
  std::optional<double> eof;
  std::string fidelity_target;
  std::optional<double> fidelity;
  double wall_time_s = 0.0;

  /// Equality of every field except the wall time.
  friend bool same_results(const RunRecord &a, const RunRecord &b) {
    return a.index == b.index && a.statistics == b.statistics && a.initial_state == b.initial_state &&
           a.channel == b.channel && a.placement == b.placement && a.q == b.q && a.deformation == b.deformation &&
           a.l == b.l && a.lp == b.lp && a.r == b.r && a.rp == b.rp &&
           a.indistinguishability == b.indistinguishability && a.probability == b.probability &&
           a.concurrence == b.concurrence && a.eof == b.eof && a.fidelity_target == b.fidelity_target &&
           a.fidelity == b.fidelity;
  }
};

/// Intermediate products of one pipeline run.
struct PipelineState {
  BasisPtr basis;
  NState initial;
  Ensemble noisy;
  Ensemble deformed;
  std::optional<DeformationSpec> deformation;
  SloccRegions regions;
  MixedPostselection postselected;
};

namespace detail {

inline std::string stage_error(const char *stage, const std::exception &e) {
  return std::string(stage) + ": " + e.what();
}

inline BasisPtr make_basis(const ScenarioConfig &c) { return ModeBasis::make(c.basis.modes, c.basis.internal); }

inline NState make_initial(const ScenarioConfig &c, const BasisPtr &basis) {
  PresetParams p;
  p.mode_a = c.initial.mode_a;
  p.mode_b = c.initial.mode_b;
  p.spin_a = c.initial.spin_a;
  p.spin_b = c.initial.spin_b;
  for (const auto &t : c.initial.terms) {
    std::vector<SingleParticleState> fs;
    for (const auto &f : t.factors) {
      CVector v = CVector::Zero(static_cast<Eigen::Index>(basis->dim()));
      for (const auto &[mode, amps] : f.amplitudes) {
        const auto m = basis->mode_index(mode);
        if (amps.size() != basis->internal_size()) {
          throw Error(ErrorCode::kConfig, "factor amplitudes for mode '" + mode + "' need " +
                                              std::to_string(basis->internal_size()) + " entries");
        }
        for (std::size_t k = 0; k < amps.size(); ++k) v[static_cast<Eigen::Index>(basis->index(m, k))] = amps[k];
      }
      fs.emplace_back(basis, std::move(v));
    }
    p.custom_terms.emplace_back(t.coefficient, std::move(fs));
  }
  return normalize(canonicalize(build_preset(c.initial.preset, c.statistics, basis, p)));
}

inline CVector two_mode_profile(const ModeBasis &basis, const std::string &m1, Complex a1, const std::string &m2,
                                Complex a2) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(basis.num_modes()));
  v[static_cast<Eigen::Index>(basis.mode_index(m1))] += a1;
  v[static_cast<Eigen::Index>(basis.mode_index(m2))] += a2;
  return v;
}

inline std::optional<DeformationSpec> make_deformation(const ScenarioConfig &c, const BasisPtr &basis) {
  if (std::holds_alternative<NoDeformation>(c.deformation)) return std::nullopt;
  DeformationSpec spec;
  if (const auto *a = std::get_if<AmplitudeDeformation>(&c.deformation)) {
    spec.pairs.push_back({SingleParticleUnitary::transfer(basis, a->from_a,
                                                          two_mode_profile(*basis, a->to_l, a->l, a->to_r, a->r), "U1"),
                          Region(*basis, {a->from_a})});
    spec.pairs.push_back({SingleParticleUnitary::transfer(basis, a->from_b,
                                                          two_mode_profile(*basis, a->to_l, a->lp, a->to_r, a->rp), "U2"),
                          Region(*basis, {a->from_b})});
    return spec;
  }
  const auto &ex = std::get<ExplicitDeformation>(c.deformation);
  for (const auto &p : ex.pairs) {
    auto u = p.spatial_only ? SingleParticleUnitary::spatial(basis, p.matrix, p.label)
                            : SingleParticleUnitary(basis, p.matrix, p.label);
    spec.pairs.push_back({std::move(u), Region(*basis, p.region)});
  }
  return spec;
}

inline LabeledState fidelity_target(const std::string &name, Statistics stats) {
  const double h = 1.0 / std::sqrt(2.0);
  CVector v = CVector::Zero(4);
  v[1] = h;
  if (name == "singlet") {
    v[2] = -h;
  } else if (name == "triplet") {
    v[2] = h;
  } else {
    v[2] = h * stats.eta();
  }
  return LabeledState({2, 2}, v);
}

// Indistinguishability of the deformed state: every product-ket term of the
// initial state is deformed on its own and measured with spatial-only
// detectors on the sLOCC regions. All terms must agree.
inline double deformed_indistinguishability(const NState &initial, const std::optional<DeformationSpec> &spec,
                                            const SloccRegions &regions) {
  const auto setup = DetectionSetup::spatial_only(initial.basis(), regions.regions());
  std::optional<double> value;
  for (const auto &term : initial.terms()) {
    NState ket(initial.statistics(), ProductKet(term.factors));
    NState d = spec ? deform(*spec, ket) : ket;
    if (d.terms().empty()) continue;
    if (!d.is_single_ket()) {
      throw Error(ErrorCode::kMeasureUndefined, "deformed term is a superposition of " +
                                                    std::to_string(d.terms().size()) + " product kets");
    }
    const double v = degree_of_indistinguishability(setup, d.terms().front().factors);
    if (value && std::abs(*value - v) > kEqualTolerance) {
      throw Error(ErrorCode::kMeasureUndefined, "terms of the initial state have different spatial profiles");
    }
    if (!value) value = v;
  }
  if (!value) throw Error(ErrorCode::kMeasureUndefined, "deformation annihilates every term");
  return *value;
}

}  // namespace detail

/// Runs initial state -> noise -> deformation -> sLOCC and returns every
/// intermediate. Errors carry the name of the failing stage.
inline PipelineState run_stages(const ScenarioConfig &c) {
  BasisPtr basis;
  std::optional<NState> initial;
  try {
    basis = detail::make_basis(c);
    initial = detail::make_initial(c, basis);
  } catch (const std::exception &e) {
    throw Error(ErrorCode::kInvalidArgument, detail::stage_error("initial state", e));
  }

  std::optional<Ensemble> noisy;
  try {
    noisy = Ensemble::pure(*initial);
    if (c.noise.placement == NoisePlacement::kBeforeDeformation && c.noise.q > 0.0) {
      const LocalQubitMap map(basis, c.noise.mode_a, c.noise.mode_b);
      const auto channel = KrausChannel::make(c.noise.channel, c.noise.q);
      CMatrix rho = map.density(*noisy);
      for (auto qubit : c.noise.qubits) rho = apply_local_channel(channel, qubit, rho);
      noisy = map.ensemble(c.statistics, rho);
    }
  } catch (const std::exception &e) {
    throw Error(ErrorCode::kChannelUndefined, detail::stage_error("noise", e));
  }

  std::optional<DeformationSpec> spec;
  std::optional<Ensemble> deformed;
  try {
    spec = detail::make_deformation(c, basis);
    deformed = spec ? deform_ensemble(*spec, *noisy) : *noisy;
  } catch (const std::exception &e) {
    throw Error(ErrorCode::kDeformationUndefined, detail::stage_error("deformation", e));
  }

  try {
    SloccRegions regions(basis, c.slocc_regions);
    auto post = slocc_postselect_mixed(*deformed, regions);
    return PipelineState{basis, *initial, *noisy, *deformed, spec, std::move(regions), std::move(post)};
  } catch (const std::exception &e) {
    throw Error(ErrorCode::kNoCoincidence, detail::stage_error("slocc", e));
  }
}

inline RunRecord run_pipeline(const ScenarioConfig &c, std::size_t index = 0) {
  const auto t0 = std::chrono::steady_clock::now();
  RunRecord rec;
  rec.index = index;
  rec.statistics = c.statistics.name();
  rec.initial_state = c.initial.preset;
  rec.placement = c.noise.placement == NoisePlacement::kNone ? "none" : "before_deformation";
  rec.channel = c.noise.placement == NoisePlacement::kNone ? "none" : channel_name(c.noise.channel);
  rec.q = c.noise.placement == NoisePlacement::kNone ? 0.0 : c.noise.q;
  rec.fidelity_target = c.fidelity_target;
  if (const auto *a = std::get_if<AmplitudeDeformation>(&c.deformation)) {
    rec.deformation = "amplitudes";
    rec.l = a->l;
    rec.lp = a->lp;
    rec.r = a->r;
    rec.rp = a->rp;
  } else {
    rec.deformation = std::holds_alternative<NoDeformation>(c.deformation) ? "none" : "explicit";
  }

  const PipelineState st = run_stages(c);

  if (c.wants(Output::kIndistinguishability)) {
    try {
      rec.indistinguishability = detail::deformed_indistinguishability(st.initial, st.deformation, st.regions);
    } catch (const std::exception &e) {
      throw Error(ErrorCode::kMeasureUndefined, detail::stage_error("indistinguishability", e));
    }
  }
  if (c.wants(Output::kProbability)) rec.probability = st.postselected.probability;

  const bool two_qubits = st.postselected.rho.dims == std::vector<std::size_t>{2, 2};
  const bool wants_pair = c.wants(Output::kConcurrence) || c.wants(Output::kEntanglementOfFormation) ||
                          (c.wants(Output::kFidelity) && c.fidelity_target != "none");
  if (wants_pair && !two_qubits) {
    throw Error(ErrorCode::kInvalidArgument, "measures: entanglement outputs need two regions with spin-1/2");
  }
  if (c.wants(Output::kConcurrence) || c.wants(Output::kEntanglementOfFormation)) {
    const double conc = concurrence(st.postselected.rho);
    if (c.wants(Output::kConcurrence)) rec.concurrence = conc;
    if (c.wants(Output::kEntanglementOfFormation)) rec.eof = entanglement_of_formation_from_concurrence(conc);
  }
  if (c.wants(Output::kFidelity) && c.fidelity_target != "none") {
    rec.fidelity = fidelity(st.postselected.rho, detail::fidelity_target(c.fidelity_target, c.statistics));
  }
  rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

/// Config for grid point `i` of the sweep. Setting l (or l') fixes its
/// partner r (or r') to the real value sqrt(1 - |l|^2) and vice versa.
inline ScenarioConfig sweep_point(const ScenarioConfig &c, std::size_t i) {
  if (!c.sweep) throw Error(ErrorCode::kConfig, "/sweep: scenario has no sweep section");
  ScenarioConfig out = c;
  out.sweep.reset();
  const auto &s = *c.sweep;
  double x = s.value(i);
  if (s.parameter == "q") {
    out.noise.q = x;
    return out;
  }
  if (s.scale == SweepScale::kProbability) x = std::sqrt(std::max(x, 0.0));
  auto &a = std::get<AmplitudeDeformation>(out.deformation);
  const double partner = std::sqrt(std::max(0.0, 1.0 - x * x));
  if (s.parameter == "l") {
    a.l = x;
    a.r = partner;
  } else if (s.parameter == "r") {
    a.r = x;
    a.l = partner;
  } else if (s.parameter == "lp") {
    a.lp = x;
    a.rp = partner;
  } else {
    a.rp = x;
    a.lp = partner;
  }
  return out;
}

/// One record per grid point in grid order. Rows may be computed on
/// several threads; the output order does not depend on scheduling.
inline std::vector<RunRecord> run_sweep(const ScenarioConfig &c, unsigned threads = 1) {
  if (!c.sweep) throw Error(ErrorCode::kConfig, "/sweep: scenario has no sweep section");
  const std::size_t rows = c.sweep->steps;
  std::vector<std::optional<RunRecord>> out(rows);
  std::vector<std::string> errors(rows);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows; i = next++) {
      try {
        out[i] = run_pipeline(sweep_point(c, i), i);
      } catch (const std::exception &e) {
        errors[i] = e.what();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rows)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  std::vector<RunRecord> records;
  records.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!out[i]) throw Error(ErrorCode::kInvalidArgument, "sweep row " + std::to_string(i) + ": " + errors[i]);
    records.push_back(std::move(*out[i]));
  }
  return records;
}

}  // namespace nolabel::scenario

#endif  // NOLABEL_SCENARIO_PIPELINE_HPP
