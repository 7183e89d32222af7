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

#ifndef NOLABEL_SCENARIO_CONFIG_HPP
#define NOLABEL_SCENARIO_CONFIG_HPP

#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "nolabel/basis.hpp"
#include "nolabel/common.hpp"
#include "nolabel/quantum_info.hpp"

namespace nolabel::scenario {

using Json = nlohmann::json;

struct BasisConfig {
  std::vector<std::string> modes{"A", "B", "L", "R"};
  std::vector<InternalDof> internal{{"spin", 2}};
};

/// One explicit factor: mode name -> amplitudes over internal configurations.
struct FactorConfig {
  std::vector<std::pair<std::string, std::vector<Complex>>> amplitudes;
};

struct TermConfig {
  Complex coefficient{1.0, 0.0};
  std::vector<FactorConfig> factors;
};

struct InitialStateConfig {
  std::string preset = "bell_singlet";
  std::string mode_a = "A";
  std::string mode_b = "B";
  std::size_t spin_a = 0;
  std::size_t spin_b = 1;
  std::vector<TermConfig> terms;  // preset "custom" only
};

enum class NoisePlacement { kNone, kBeforeDeformation };

struct NoiseConfig {
  NoisePlacement placement = NoisePlacement::kNone;
  ChannelKind channel = ChannelKind::kPhaseDamping;
  double q = 0.0;
  std::vector<std::size_t> qubits{0, 1};
  std::string mode_a = "A";
  std::string mode_b = "B";
};

struct NoDeformation {};

/// A -> l|L> + r|R>, B -> l'|L> + r'|R>, internal state untouched.
struct AmplitudeDeformation {
  Complex l{1.0, 0.0};
  Complex lp{0.0, 0.0};
  Complex r{0.0, 0.0};
  Complex rp{1.0, 0.0};
  std::string from_a = "A";
  std::string from_b = "B";
  std::string to_l = "L";
  std::string to_r = "R";
};

struct ExplicitPair {
  std::vector<std::string> region;
  std::string label;
  // Either a spatial (modes x modes) or a full (dim x dim) matrix.
  bool spatial_only = true;
  CMatrix matrix;
};

struct ExplicitDeformation {
  std::vector<ExplicitPair> pairs;
};

using DeformationConfig = std::variant<NoDeformation, AmplitudeDeformation, ExplicitDeformation>;

enum class Output { kIndistinguishability, kProbability, kConcurrence, kEntanglementOfFormation, kFidelity };

inline const char *output_name(Output o) {
  switch (o) {
    case Output::kIndistinguishability: return "indistinguishability";
    case Output::kProbability: return "probability";
    case Output::kConcurrence: return "concurrence";
    case Output::kEntanglementOfFormation: return "eof";
    case Output::kFidelity: return "fidelity";
  }
  return "unknown";
}

enum class SweepScale { kAmplitude, kProbability };

struct SweepConfig {
  std::string parameter;  // l, lp, r, rp or q
  double start = 0.0;
  double stop = 1.0;
  std::size_t steps = 2;
  SweepScale scale = SweepScale::kAmplitude;

  double value(std::size_t i) const {
    if (steps == 1) return start;
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
};

struct ScenarioConfig {
  Statistics statistics = Statistics::fermion();
  BasisConfig basis;
  InitialStateConfig initial;
  NoiseConfig noise;
  DeformationConfig deformation = NoDeformation{};
  std::vector<std::vector<std::string>> slocc_regions;
  std::set<Output> outputs{Output::kIndistinguishability, Output::kProbability, Output::kConcurrence,
                           Output::kEntanglementOfFormation, Output::kFidelity};
  std::string fidelity_target = "max_entangled";
  std::optional<SweepConfig> sweep;

  bool wants(Output o) const { return outputs.count(o) != 0; }
};

inline constexpr const char *kSweepParameters[] = {"l", "lp", "r", "rp", "q"};
inline constexpr const char *kFidelityTargets[] = {"max_entangled", "singlet", "triplet", "none"};

namespace detail {

[[noreturn]] inline void fail(const std::string &path, const std::string &what) {
  throw Error(ErrorCode::kConfig, (path.empty() ? std::string("/") : path) + ": " + what);
}

inline std::string join(const char *const *items, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += (i ? ", " : "") + std::string(items[i]);
  return out;
}

template <std::size_t N>
std::string join(const char *const (&items)[N]) {
  return join(items, N);
}

inline const Json *member(const Json &obj, const char *key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

inline void require_object(const Json &j, const std::string &path) {
  if (!j.is_object()) fail(path, "expected an object");
}

inline void reject_unknown_keys(const Json &obj, const std::string &path, std::initializer_list<const char *> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char *a : allowed) ok = ok || it.key() == a;
    if (!ok) fail(path + "/" + it.key(), "unknown field");
  }
}

inline double read_number(const Json &j, const std::string &path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

/// A complex value is a number or a [re, im] pair.
inline Complex read_complex(const Json &j, const std::string &path) {
  if (j.is_number()) return {read_number(j, path), 0.0};
  if (j.is_array() && j.size() == 2) return {read_number(j[0], path + "/0"), read_number(j[1], path + "/1")};
  fail(path, "expected a number or a [re, im] pair");
}

inline std::string read_string(const Json &j, const std::string &path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

inline std::size_t read_index(const Json &j, const std::string &path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

inline std::vector<std::string> read_strings(const Json &j, const std::string &path) {
  if (!j.is_array()) fail(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_string(j[i], path + "/" + std::to_string(i)));
  return out;
}

inline std::size_t read_spin(const Json &j, const std::string &path) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "up") return 0;
    if (s == "down") return 1;
    fail(path, "spin must be \"up\", \"down\" or an index");
  }
  return read_index(j, path);
}

inline CMatrix read_matrix(const Json &j, const std::string &path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  CMatrix m(rows, rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto &row = j[static_cast<std::size_t>(i)];
    const std::string rp = path + "/" + std::to_string(i);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) fail(rp, "matrix must be square");
    for (Eigen::Index k = 0; k < rows; ++k) {
      m(i, k) = read_complex(row[static_cast<std::size_t>(k)], rp + "/" + std::to_string(k));
    }
  }
  return m;
}

inline void check_unit_pair(Complex a, Complex b, const std::string &path, const char *names) {
  const double s = std::norm(a) + std::norm(b);
  if (std::abs(s - 1.0) > kEqualTolerance) {
    std::ostringstream os;
    os.precision(12);
    os << "normalization constraint " << names << " = 1 violated (got " << s << ")";
    fail(path, os.str());
  }
}

inline BasisConfig parse_basis(const Json &j, const std::string &path) {
  require_object(j, path);
  reject_unknown_keys(j, path, {"modes", "internal"});
  BasisConfig b;
  if (auto m = member(j, "modes")) b.modes = read_strings(*m, path + "/modes");
  if (auto in = member(j, "internal")) {
    if (!in->is_array()) fail(path + "/internal", "expected an array");
    b.internal.clear();
    for (std::size_t i = 0; i < in->size(); ++i) {
      const std::string p = path + "/internal/" + std::to_string(i);
      const auto &d = (*in)[i];
      require_object(d, p);
      reject_unknown_keys(d, p, {"name", "dim"});
      auto name = member(d, "name");
      auto dim = member(d, "dim");
      if (!name || !dim) fail(p, "internal dof needs \"name\" and \"dim\"");
      const auto n = read_index(*dim, p + "/dim");
      if (n < 1) fail(p + "/dim", "cardinality must be at least 1");
      b.internal.push_back({read_string(*name, p + "/name"), n});
    }
  }
  if (b.modes.empty()) fail(path + "/modes", "at least one spatial mode is required");
  return b;
}

inline InitialStateConfig parse_initial(const Json &j, const std::string &path) {
  require_object(j, path);
  reject_unknown_keys(j, path, {"preset", "mode_a", "mode_b", "spin_a", "spin_b", "terms"});
  InitialStateConfig s;
  if (auto p = member(j, "preset")) s.preset = read_string(*p, path + "/preset");
  static constexpr const char *kPresets[] = {"product_AB", "bell_singlet", "bell_triplet", "custom"};
  bool known = false;
  for (const char *k : kPresets) known = known || s.preset == k;
  if (!known) fail(path + "/preset", "unknown preset '" + s.preset + "' (expected one of: " + join(kPresets) + ")");
  if (auto m = member(j, "mode_a")) s.mode_a = read_string(*m, path + "/mode_a");
  if (auto m = member(j, "mode_b")) s.mode_b = read_string(*m, path + "/mode_b");
  if (auto m = member(j, "spin_a")) s.spin_a = read_spin(*m, path + "/spin_a");
  if (auto m = member(j, "spin_b")) s.spin_b = read_spin(*m, path + "/spin_b");
  if (auto t = member(j, "terms")) {
    if (!t->is_array() || t->empty()) fail(path + "/terms", "expected a nonempty array of terms");
    for (std::size_t i = 0; i < t->size(); ++i) {
      const std::string tp = path + "/terms/" + std::to_string(i);
      const auto &term = (*t)[i];
      require_object(term, tp);
      reject_unknown_keys(term, tp, {"coefficient", "factors"});
      TermConfig tc;
      if (auto c = member(term, "coefficient")) tc.coefficient = read_complex(*c, tp + "/coefficient");
      auto fs = member(term, "factors");
      if (!fs || !fs->is_array() || fs->empty()) fail(tp + "/factors", "expected a nonempty array of factors");
      for (std::size_t f = 0; f < fs->size(); ++f) {
        const std::string fp = tp + "/factors/" + std::to_string(f);
        const auto &fj = (*fs)[f];
        require_object(fj, fp);
        FactorConfig fc;
        for (auto it = fj.begin(); it != fj.end(); ++it) {
          const std::string mp = fp + "/" + it.key();
          std::vector<Complex> amps;
          if (!it->is_array()) fail(mp, "expected an array of amplitudes over internal configurations");
          for (std::size_t k = 0; k < it->size(); ++k) amps.push_back(read_complex((*it)[k], mp + "/" + std::to_string(k)));
          fc.amplitudes.emplace_back(it.key(), std::move(amps));
        }
        tc.factors.push_back(std::move(fc));
      }
      s.terms.push_back(std::move(tc));
    }
  }
  if (s.preset == "custom" && s.terms.empty()) fail(path + "/terms", "preset \"custom\" needs explicit terms");
  if (s.preset != "custom" && !s.terms.empty()) fail(path + "/terms", "terms are only allowed with preset \"custom\"");
  return s;
}

inline NoiseConfig parse_noise(const Json &j, const std::string &path) {
  require_object(j, path);
  reject_unknown_keys(j, path, {"channel", "q", "placement", "qubits", "mode_a", "mode_b"});
  NoiseConfig n;
  n.placement = NoisePlacement::kBeforeDeformation;
  if (auto p = member(j, "placement")) {
    const auto s = read_string(*p, path + "/placement");
    if (s == "none") {
      n.placement = NoisePlacement::kNone;
    } else if (s != "before_deformation") {
      fail(path + "/placement", "unknown placement '" + s + "' (expected one of: before_deformation, none)");
    }
  }
  if (auto c = member(j, "channel")) {
    const auto s = read_string(*c, path + "/channel");
    auto kind = parse_channel(s);
    if (!kind) {
      fail(path + "/channel",
           "unknown channel '" + s + "' (expected one of: phase_damping, depolarizing, amplitude_damping)");
    }
    n.channel = *kind;
  } else if (n.placement != NoisePlacement::kNone) {
    fail(path + "/channel", "missing channel name");
  }
  if (auto q = member(j, "q")) n.q = read_number(*q, path + "/q");
  if (!(n.q >= 0.0 && n.q <= 1.0)) fail(path + "/q", "channel strength must lie in [0, 1]");
  if (auto qs = member(j, "qubits")) {
    if (!qs->is_array()) fail(path + "/qubits", "expected an array of qubit indices");
    n.qubits.clear();
    for (std::size_t i = 0; i < qs->size(); ++i) {
      const auto idx = read_index((*qs)[i], path + "/qubits/" + std::to_string(i));
      if (idx > 1) fail(path + "/qubits/" + std::to_string(i), "qubit index must be 0 or 1");
      n.qubits.push_back(idx);
    }
  }
  if (auto m = member(j, "mode_a")) n.mode_a = read_string(*m, path + "/mode_a");
  if (auto m = member(j, "mode_b")) n.mode_b = read_string(*m, path + "/mode_b");
  return n;
}

inline DeformationConfig parse_deformation(const Json &j, const std::string &path) {
  require_object(j, path);
  std::string type = "amplitudes";
  if (auto t = member(j, "type")) type = read_string(*t, path + "/type");
  if (type == "none") {
    reject_unknown_keys(j, path, {"type"});
    return NoDeformation{};
  }
  if (type == "amplitudes") {
    reject_unknown_keys(j, path, {"type", "l", "lp", "r", "rp", "from", "to"});
    AmplitudeDeformation d;
    for (auto [key, slot] : {std::pair{"l", &d.l}, {"lp", &d.lp}, {"r", &d.r}, {"rp", &d.rp}}) {
      auto v = member(j, key);
      if (!v) fail(path + "/" + key, "missing amplitude");
      *slot = read_complex(*v, path + "/" + key);
    }
    check_unit_pair(d.l, d.r, path + "/l", "|l|^2 + |r|^2");
    check_unit_pair(d.lp, d.rp, path + "/lp", "|l'|^2 + |r'|^2");
    if (auto f = member(j, "from")) {
      auto v = read_strings(*f, path + "/from");
      if (v.size() != 2) fail(path + "/from", "expected two source modes");
      d.from_a = v[0];
      d.from_b = v[1];
    }
    if (auto t = member(j, "to")) {
      auto v = read_strings(*t, path + "/to");
      if (v.size() != 2) fail(path + "/to", "expected two target modes");
      d.to_l = v[0];
      d.to_r = v[1];
    }
    return d;
  }
  if (type == "explicit") {
    reject_unknown_keys(j, path, {"type", "pairs"});
    auto ps = member(j, "pairs");
    if (!ps || !ps->is_array() || ps->empty()) fail(path + "/pairs", "expected a nonempty array of pairs");
    ExplicitDeformation d;
    for (std::size_t i = 0; i < ps->size(); ++i) {
      const std::string pp = path + "/pairs/" + std::to_string(i);
      const auto &pj = (*ps)[i];
      require_object(pj, pp);
      reject_unknown_keys(pj, pp, {"region", "label", "spatial", "matrix"});
      ExplicitPair pair;
      auto region = member(pj, "region");
      if (!region) fail(pp + "/region", "missing region");
      pair.region = read_strings(*region, pp + "/region");
      if (auto l = member(pj, "label")) pair.label = read_string(*l, pp + "/label");
      auto sp = member(pj, "spatial");
      auto full = member(pj, "matrix");
      if ((sp == nullptr) == (full == nullptr)) fail(pp, "give exactly one of \"spatial\" or \"matrix\"");
      pair.spatial_only = sp != nullptr;
      pair.matrix = read_matrix(sp ? *sp : *full, pp + (sp ? "/spatial" : "/matrix"));
      d.pairs.push_back(std::move(pair));
    }
    return d;
  }
  fail(path + "/type", "unknown deformation type '" + type + "' (expected one of: none, amplitudes, explicit)");
}

inline SweepConfig parse_sweep(const Json &j, const std::string &path) {
  require_object(j, path);
  reject_unknown_keys(j, path, {"parameter", "start", "stop", "steps", "scale"});
  SweepConfig s;
  auto p = member(j, "parameter");
  if (!p) fail(path + "/parameter", "missing sweep parameter");
  s.parameter = read_string(*p, path + "/parameter");
  bool known = false;
  for (const char *k : kSweepParameters) known = known || s.parameter == k;
  if (!known) {
    fail(path + "/parameter", "unknown sweep parameter '" + s.parameter + "' (expected one of: " +
                                  join(kSweepParameters) + ")");
  }
  if (auto v = member(j, "start")) s.start = read_number(*v, path + "/start");
  if (auto v = member(j, "stop")) s.stop = read_number(*v, path + "/stop");
  if (auto v = member(j, "steps")) s.steps = read_index(*v, path + "/steps");
  if (s.steps < 1) fail(path + "/steps", "at least one grid point is required");
  if (auto v = member(j, "scale")) {
    const auto sc = read_string(*v, path + "/scale");
    if (sc == "amplitude") {
      s.scale = SweepScale::kAmplitude;
    } else if (sc == "probability") {
      s.scale = SweepScale::kProbability;
    } else {
      fail(path + "/scale", "unknown scale '" + sc + "' (expected one of: amplitude, probability)");
    }
  }
  const double lo = std::min(s.start, s.stop);
  const double hi = std::max(s.start, s.stop);
  if (s.scale == SweepScale::kProbability || s.parameter == "q") {
    if (lo < 0.0 || hi > 1.0) fail(path, "sweep range must lie in [0, 1]");
  } else if (lo < -1.0 || hi > 1.0) {
    fail(path, "amplitude sweep range must lie in [-1, 1]");
  }
  return s;
}

}  // namespace detail

/// Parses and validates a scenario document. Errors name the JSON pointer
/// of the offending field.
inline ScenarioConfig parse_scenario(const Json &j) {
  using namespace detail;
  require_object(j, "");
  reject_unknown_keys(j, "", {"statistics", "basis", "initial_state", "noise", "deformation", "slocc_regions",
                              "outputs", "fidelity_target", "sweep", "description"});
  ScenarioConfig c;
  auto st = member(j, "statistics");
  if (!st) fail("/statistics", "missing statistics (boson or fermion)");
  const auto sname = read_string(*st, "/statistics");
  auto stats = parse_statistics(sname);
  if (!stats) fail("/statistics", "unknown statistics '" + sname + "' (expected one of: boson, fermion)");
  c.statistics = *stats;

  if (auto b = member(j, "basis")) c.basis = parse_basis(*b, "/basis");
  if (auto s = member(j, "initial_state")) c.initial = parse_initial(*s, "/initial_state");
  if (auto n = member(j, "noise")) c.noise = parse_noise(*n, "/noise");
  if (auto d = member(j, "deformation")) c.deformation = parse_deformation(*d, "/deformation");

  if (auto r = member(j, "slocc_regions")) {
    if (!r->is_array() || r->empty()) fail("/slocc_regions", "expected a nonempty array of regions");
    for (std::size_t i = 0; i < r->size(); ++i) {
      c.slocc_regions.push_back(read_strings((*r)[i], "/slocc_regions/" + std::to_string(i)));
    }
  } else if (const auto *amp = std::get_if<AmplitudeDeformation>(&c.deformation)) {
    c.slocc_regions = {{amp->to_l}, {amp->to_r}};
  } else if (std::holds_alternative<NoDeformation>(c.deformation)) {
    c.slocc_regions = {{c.initial.mode_a}, {c.initial.mode_b}};
  } else {
    fail("/slocc_regions", "explicit deformations need explicit sLOCC regions");
  }

  if (auto o = member(j, "outputs")) {
    c.outputs.clear();
    const auto names = read_strings(*o, "/outputs");
    for (std::size_t i = 0; i < names.size(); ++i) {
      bool found = false;
      for (auto out : {Output::kIndistinguishability, Output::kProbability, Output::kConcurrence,
                       Output::kEntanglementOfFormation, Output::kFidelity}) {
        if (names[i] == output_name(out)) {
          c.outputs.insert(out);
          found = true;
        }
      }
      if (!found) {
        fail("/outputs/" + std::to_string(i), "unknown output '" + names[i] +
                                                  "' (expected one of: indistinguishability, probability, "
                                                  "concurrence, eof, fidelity)");
      }
    }
  }
  if (auto f = member(j, "fidelity_target")) {
    c.fidelity_target = read_string(*f, "/fidelity_target");
    bool known = false;
    for (const char *k : kFidelityTargets) known = known || c.fidelity_target == k;
    if (!known) {
      fail("/fidelity_target", "unknown target '" + c.fidelity_target + "' (expected one of: " +
                                   join(kFidelityTargets) + ")");
    }
  }
  if (auto s = member(j, "sweep")) {
    c.sweep = parse_sweep(*s, "/sweep");
    if (c.sweep->parameter != "q" && !std::holds_alternative<AmplitudeDeformation>(c.deformation)) {
      fail("/sweep/parameter", "amplitude sweeps need an \"amplitudes\" deformation");
    }
  }

  // Structural checks against the basis.
  try {
    ModeBasis basis(c.basis.modes, c.basis.internal);
    for (std::size_t i = 0; i < c.slocc_regions.size(); ++i) {
      for (const auto &m : c.slocc_regions[i]) {
        if (!basis.find_mode(m)) fail("/slocc_regions/" + std::to_string(i), "unknown spatial mode '" + m + "'");
      }
    }
    if (const auto *amp = std::get_if<AmplitudeDeformation>(&c.deformation)) {
      for (const auto &m : {amp->from_a, amp->from_b, amp->to_l, amp->to_r}) {
        if (!basis.find_mode(m)) fail("/deformation", "unknown spatial mode '" + m + "'");
      }
    }
  } catch (const Error &e) {
    if (e.code() == ErrorCode::kConfig) throw;
    fail("/basis", e.what());
  }
  return c;
}

inline ScenarioConfig parse_scenario_text(const std::string &text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error &e) {
    throw Error(ErrorCode::kConfig, std::string("JSON parse error: ") + e.what());
  }
  return parse_scenario(j);
}

inline ScenarioConfig load_scenario(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str());
}

}  // namespace nolabel::scenario

#endif  // NOLABEL_SCENARIO_CONFIG_HPP
