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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

#include "nolabel/kernels.hpp"
#include "nolabel/scenario/config.hpp"
#include "nolabel/scenario/pipeline.hpp"
#include "nolabel/scenario/report.hpp"
#include "nolabel/scenario/validate.hpp"

namespace {

using namespace nolabel;
using namespace nolabel::scenario;

const std::string kSource = NOLABEL_SOURCE_DIR;

std::string config_error(const std::string &text) {
  try {
    parse_scenario_text(text);
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
    return e.what();
  }
  ADD_FAILURE() << "config was accepted";
  return {};
}

bool contains(const std::string &haystack, const std::string &needle) {
  return haystack.find(needle) != std::string::npos;
}

const char *kMaxOverlapSinglet = R"({
  "statistics": "fermion",
  "initial_state": {"preset": "bell_singlet"},
  "deformation": {"l": 0.7071067811865476, "r": 0.7071067811865476,
                  "lp": 0.7071067811865476, "rp": 0.7071067811865476},
  "fidelity_target": "singlet"
})";

TEST(Config, MinimalConfigFillsDefaults) {
  const auto c = parse_scenario_text(kMaxOverlapSinglet);
  EXPECT_TRUE(c.statistics.is_fermion());
  EXPECT_EQ(c.basis.modes, (std::vector<std::string>{"A", "B", "L", "R"}));
  EXPECT_EQ(c.slocc_regions, (std::vector<std::vector<std::string>>{{"L"}, {"R"}}));
  EXPECT_EQ(c.noise.placement, NoisePlacement::kNone);
  EXPECT_TRUE(c.wants(Output::kEntanglementOfFormation));
  EXPECT_FALSE(c.sweep.has_value());
}

TEST(Config, NormalizationViolationNamesConstraint) {
  const auto msg = config_error(R"({"statistics": "boson",
    "deformation": {"l": 0.9, "r": 0.3, "lp": 0, "rp": 1}})");
  EXPECT_TRUE(contains(msg, "normalization constraint |l|^2 + |r|^2 = 1"));
  EXPECT_TRUE(contains(msg, "/deformation/l"));
  EXPECT_TRUE(contains(msg, "0.9"));
}

TEST(Config, UnknownChannelListsChoices) {
  const auto msg = config_error(R"({"statistics": "boson", "noise": {"channel": "bit_flip", "q": 0.1}})");
  EXPECT_TRUE(contains(msg, "/noise/channel"));
  EXPECT_TRUE(contains(msg, "phase_damping, depolarizing, amplitude_damping"));
}

TEST(Config, OtherValidationErrors) {
  EXPECT_TRUE(contains(config_error(R"({"basis": {}})"), "/statistics"));
  EXPECT_TRUE(contains(config_error(R"({"statistics": "anyon"})"), "boson, fermion"));
  EXPECT_TRUE(contains(config_error(R"({"statistics": "boson", "colour": 1})"), "colour"));
  EXPECT_TRUE(contains(config_error(R"({"statistics": "boson", "noise": {"channel": "depolarizing", "q": 2}})"),
                       "/noise/q"));
  EXPECT_TRUE(contains(config_error(R"({"statistics": "boson", "slocc_regions": [["L"], ["Q"]]})"), "'Q'"));
  EXPECT_TRUE(contains(config_error(R"({"statistics": "boson", "initial_state": {"preset": "ghz"}})"), "ghz"));
  EXPECT_TRUE(contains(config_error(R"({"statistics": "boson", "sweep": {"parameter": "l"}})"), "amplitudes"));
  EXPECT_TRUE(contains(config_error(R"({"statistics": "boson", "deformation": {"l": 1, "r": 0, "lp": 0, "rp": 1},
                                       "sweep": {"parameter": "x"}})"), "/sweep/parameter"));
  EXPECT_TRUE(contains(config_error("{not json"), "parse error"));
}

TEST(Config, LoadScenarioFiles) {
  for (const char *name : {"restoration_phase_damping", "overlap_sweep", "distinguishable_baseline"}) {
    EXPECT_NO_THROW(load_scenario(kSource + "/scenarios/" + name + ".json")) << name;
  }
  try {
    load_scenario(kSource + "/scenarios/does_not_exist.json");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(Pipeline, MaximalOverlapSingletIsRestored) {
  const auto rec = run_pipeline(parse_scenario_text(kMaxOverlapSinglet));
  EXPECT_NEAR(*rec.indistinguishability, 1.0, 1e-9);
  EXPECT_NEAR(*rec.eof, 1.0, 1e-9);
  EXPECT_NEAR(*rec.concurrence, 1.0, 1e-9);
  EXPECT_NEAR(*rec.fidelity, 1.0, 1e-9);
  EXPECT_NEAR(*rec.probability, 0.5, 1e-9);
}

TEST(Pipeline, NoOverlapProductIsDistinguishable) {
  const auto rec = run_pipeline(parse_scenario_text(R"({"statistics": "boson",
    "initial_state": {"preset": "product_AB"},
    "deformation": {"l": 1, "r": 0, "lp": 0, "rp": 1}})"));
  EXPECT_NEAR(*rec.indistinguishability, 0.0, 1e-12);
  EXPECT_NEAR(*rec.concurrence, 0.0, 1e-12);
  EXPECT_NEAR(*rec.probability, 1.0, 1e-12);
}

TEST(Pipeline, DephasingWithoutOverlapLowersEntanglement) {
  const auto rec = run_pipeline(parse_scenario_text(R"({"statistics": "fermion",
    "initial_state": {"preset": "bell_singlet"},
    "noise": {"channel": "phase_damping", "q": 0.5},
    "deformation": {"l": 1, "r": 0, "lp": 0, "rp": 1}})"));
  // Both qubits dephased: coherence scales by (1 - q), so C = 1 - q.
  EXPECT_NEAR(*rec.concurrence, 0.5, 1e-9);
  EXPECT_LT(*rec.eof, 1.0);
}

TEST(Pipeline, ProbabilityMatchesKernelRecomputation) {
  const auto cfg = parse_scenario_text(R"({"statistics": "boson",
    "initial_state": {"preset": "product_AB"},
    "deformation": {"l": 0.6, "r": 0.8, "lp": [0.0, 0.28], "rp": 0.96}})");
  const auto st = run_stages(cfg);
  const auto rec = run_pipeline(cfg);
  ASSERT_EQ(st.deformed.size(), 1u);
  const NState &psi = st.deformed.members()[0].state;
  const auto proj = slocc_projector(st.regions);
  double kept = 0.0;
  for (std::size_t i = 0; i < proj.size(); ++i) kept += std::norm(inner_product(NState(psi.statistics(), proj.term(i)), psi));
  EXPECT_NEAR(*rec.probability, kept / inner_product(psi, psi).real(), 1e-9);
}

TEST(Pipeline, ErrorsCarryStageName) {
  // Both particles start on A, so the deformation has nothing in region B.
  const auto cfg = parse_scenario_text(R"({"statistics": "boson",
    "initial_state": {"preset": "product_AB", "mode_b": "A"},
    "deformation": {"l": 1, "r": 0, "lp": 0, "rp": 1}})");
  try {
    run_pipeline(cfg);
    FAIL();
  } catch (const Error &e) {
    EXPECT_TRUE(contains(e.what(), "deformation"));
  }
}

TEST(Pipeline, Deterministic) {
  const auto cfg = load_scenario(kSource + "/scenarios/restoration_phase_damping.json");
  EXPECT_TRUE(same_results(run_pipeline(cfg), run_pipeline(cfg)));
}

TEST(Sweep, SinglePointEqualsRun) {
  auto cfg = load_scenario(kSource + "/scenarios/overlap_sweep.json");
  cfg.sweep->steps = 1;
  cfg.sweep->start = 0.3;
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(same_results(rows[0], run_pipeline(sweep_point(cfg, 0))));
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
  const auto cfg = load_scenario(kSource + "/scenarios/overlap_sweep.json");
  const auto one = run_sweep(cfg, 1);
  const auto four = run_sweep(cfg, 4);
  ASSERT_EQ(one.size(), 21u);
  ASSERT_EQ(four.size(), 21u);
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].index, i);
    EXPECT_TRUE(same_results(one[i], four[i])) << "row " << i;
  }
}

TEST(Sweep, NoiseStrengthAtMaximalOverlapKeepsEoFAtOne) {
  auto cfg = load_scenario(kSource + "/scenarios/restoration_phase_damping.json");
  cfg.sweep = SweepConfig{"q", 0.0, 1.0, 11, SweepScale::kAmplitude};
  for (const auto &r : run_sweep(cfg, 2)) EXPECT_NEAR(*r.eof, 1.0, 1e-9) << "q=" << r.q;
}

TEST(Sweep, RowFailureReportsIndex) {
  const auto cfg = parse_scenario_text(R"({"statistics": "boson",
    "initial_state": {"preset": "product_AB"},
    "deformation": {"l": 1, "r": 0, "lp": 0, "rp": 1},
    "sweep": {"parameter": "l", "start": 1, "stop": 0, "steps": 3}})");
  // l = 0 sends both particles to R, so no coincidence is left.
  try {
    run_sweep(cfg);
    FAIL();
  } catch (const Error &e) {
    EXPECT_TRUE(contains(e.what(), "sweep row 2")) << e.what();
  }
}

RunRecord sample_record(std::size_t i) {
  RunRecord r;
  r.index = i;
  r.statistics = "boson";
  r.initial_state = "bell_singlet";
  r.channel = "none";
  r.placement = "none";
  r.deformation = "amplitudes";
  r.l = Complex(0.1 * static_cast<double>(i), 0.2);
  r.probability = 1.0 / 3.0;
  r.eof = 0.123456789012345;
  r.fidelity_target = "a,\"quoted\"";
  return r;
}

std::size_t count_lines(const std::string &s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

TEST(Report, CsvShape) {
  const auto csv = render_report({sample_record(0), sample_record(1), sample_record(2)}, ReportFormat::kCsv);
  EXPECT_EQ(count_lines(csv), 4u);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "index,statistics,initial_state,channel,q,placement,deformation,l_re,l_im,"
                                           "lp_re,lp_im,r_re,r_im,rp_re,rp_im,indistinguishability,probability,"
                                           "concurrence,eof,fidelity_target,fidelity,wall_time_s");
  EXPECT_TRUE(contains(csv, "\"a,\"\"quoted\"\"\""));
  EXPECT_TRUE(contains(csv, "0.333333333333"));
  EXPECT_FALSE(contains(csv, "0.3333333333333"));
  const auto empty = render_report({}, ReportFormat::kCsv);
  EXPECT_EQ(count_lines(empty), 1u);
}

TEST(Report, JsonRoundTrip) {
  const std::vector<RunRecord> recs{sample_record(0), sample_record(1)};
  const auto parsed = nlohmann::json::parse(render_report(recs, ReportFormat::kJson));
  ASSERT_TRUE(parsed.is_array());
  ASSERT_EQ(parsed.size(), 2u);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    EXPECT_EQ(parsed[i]["index"].get<std::size_t>(), i);
    EXPECT_NEAR(parsed[i]["l_re"].get<double>(), recs[i].l->real(), 1e-9);
    EXPECT_NEAR(parsed[i]["eof"].get<double>(), *recs[i].eof, 1e-9);
    EXPECT_NEAR(parsed[i]["probability"].get<double>(), *recs[i].probability, 1e-9);
    EXPECT_TRUE(parsed[i]["concurrence"].is_null());
    EXPECT_EQ(parsed[i]["fidelity_target"].get<std::string>(), recs[i].fidelity_target);
  }
}

TEST(Report, IoFailure) {
  try {
    emit_report({}, ReportFormat::kCsv, "/nonexistent-dir/out.csv");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
  EXPECT_FALSE(parse_report_format("xml").has_value());
}

TEST(Validate, FreshBuildPassesAndIsDeterministic) {
  const auto a = validate_suite(5);
  EXPECT_TRUE(a.all_passed());
  std::ostringstream sa, sb;
  a.print(sa);
  validate_suite(5).print(sb);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(Validate, BrokenRyserIsCaught) {
  ValidationHooks hooks;
  // Ryser without the (-1)^(n - |S|) sign.
  hooks.permanent = [](const CMatrix &m) {
    const auto n = m.rows();
    Complex total = 0.0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      Complex prod = 1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        Complex row = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
          if (mask >> j & 1) row += m(i, j);
        }
        prod *= row;
      }
      total += prod;
    }
    return total;
  };
  const auto report = validate_suite(5, hooks);
  EXPECT_FALSE(report.all_passed());
  for (const auto &c : report.checks) {
    if (c.name == "permanent_matches_permutation_sum") {
      EXPECT_FALSE(c.passed);
    }
    if (c.name == "determinant_matches_signed_permutation_sum") {
      EXPECT_TRUE(c.passed);
    }
  }
}

}  // namespace
