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

#ifndef NOLABEL_SCENARIO_VALIDATE_HPP
#define NOLABEL_SCENARIO_VALIDATE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "nolabel/indistinguishability.hpp"
#include "nolabel/kernels.hpp"
#include "nolabel/operators.hpp"
#include "nolabel/quantum_info.hpp"
#include "nolabel/random.hpp"
#include "nolabel/slocc.hpp"
#include "nolabel/state.hpp"

namespace nolabel::scenario {

/// Replaceable pieces of the library, used to inject faults and confirm
/// that the corresponding checks fail.
struct ValidationHooks {
  std::function<Complex(const CMatrix &)> permanent;
  std::function<Complex(const CMatrix &)> determinant;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  double tolerance = kEqualTolerance;
  std::string detail;
};

struct ValidationReport {
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed; });
  }

  void print(std::ostream &os) const {
    os << "validation seed " << seed << "\n";
    for (const auto &c : checks) {
      char err[32];
      std::snprintf(err, sizeof err, "%.3e", c.max_error);
      os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << "  max_error=" << err;
      if (!c.detail.empty()) os << "  (" << c.detail << ")";
      os << "\n";
    }
    os << (all_passed() ? "all checks passed" : "some checks FAILED") << "\n";
  }
};

namespace detail {

// Norm of a difference after merging matching terms, so that equal
// contributions cancel in the coefficients rather than in the Gram sum.
inline double residual_norm(const NState &diff) {
  const auto merged = canonicalize(diff);
  return merged.terms().empty() ? 0.0 : norm(merged);
}

// Direct N! expansion; reference for the fast kernels.
inline Complex permutation_sum(const CMatrix &m, bool signed_sum) {
  const auto n = static_cast<std::size_t>(m.rows());
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Complex total{0.0, 0.0};
  do {
    Complex prod{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) prod *= m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(perm[i]));
    total += (signed_sum && nolabel::detail::permutation_parity(perm)) ? -prod : prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

class CheckRecorder {
 public:
  explicit CheckRecorder(std::string name, double tol = kEqualTolerance) : result_{std::move(name), true, 0.0, tol, {}} {}

  void error(double e) {
    if (!(e <= result_.max_error)) result_.max_error = e;  // NaN sticks
  }
  void fail(const std::string &why) {
    result_.passed = false;
    if (result_.detail.empty()) result_.detail = why;
  }
  CheckResult finish() {
    if (!(result_.max_error <= result_.tolerance)) result_.passed = false;
    return result_;
  }

 private:
  CheckResult result_;
};

}  // namespace detail

/// Runs the cross-module invariant checks on seeded random inputs. The
/// report depends only on the seed and hooks.
inline ValidationReport validate_suite(std::uint64_t seed = 1, const ValidationHooks &hooks = {}) {
  ValidationReport report;
  report.seed = seed;
  RandomSource rng(seed);
  auto perm = [&](const CMatrix &m) { return hooks.permanent ? hooks.permanent(m) : permanent(m); };
  auto det = [&](const CMatrix &m) { return hooks.determinant ? hooks.determinant(m) : determinant(m); };
  const auto stats_list = {Statistics::boson(), Statistics::fermion()};

  {
    detail::CheckRecorder c("permanent_matches_permutation_sum");
    for (Eigen::Index n = 1; n <= 6; ++n) {
      for (int rep = 0; rep < 5; ++rep) {
        const CMatrix m = rng.matrix(n, n);
        c.error(std::abs(perm(m) - detail::permutation_sum(m, false)));
      }
    }
    report.checks.push_back(c.finish());
  }
  {
    detail::CheckRecorder c("determinant_matches_signed_permutation_sum");
    for (Eigen::Index n = 1; n <= 6; ++n) {
      for (int rep = 0; rep < 5; ++rep) {
        const CMatrix m = rng.matrix(n, n);
        c.error(std::abs(det(m) - detail::permutation_sum(m, true)));
      }
    }
    report.checks.push_back(c.finish());
  }

  const auto basis = ModeBasis::spin_half({"m0", "m1", "m2"});
  {
    detail::CheckRecorder c("inner_product_is_hermitian");
    for (auto st : stats_list) {
      for (int rep = 0; rep < 10; ++rep) {
        const auto x = rng.superposition(st, basis, 3, 2);
        const auto y = rng.superposition(st, basis, 3, 2);
        c.error(std::abs(inner_product(x, y) - std::conj(inner_product(y, x))));
        const Complex xx = inner_product(x, x);
        c.error(std::abs(xx.imag()));
        if (xx.real() < -kEqualTolerance) c.fail("negative <x|x>");
      }
    }
    report.checks.push_back(c.finish());
  }
  {
    detail::CheckRecorder c("swap_rule_multiplies_by_eta");
    for (auto st : stats_list) {
      for (int rep = 0; rep < 10; ++rep) {
        const auto x = rng.superposition(st, basis, 3, 1);
        auto k = rng.product_ket(basis, 3);
        const Complex before = inner_product(x, NState(st, k));
        std::swap(k.factors[0], k.factors[2]);
        const Complex after = inner_product(x, NState(st, k));
        c.error(std::abs(after - static_cast<double>(st.eta()) * before));
      }
    }
    report.checks.push_back(c.finish());
  }
  {
    detail::CheckRecorder c("canonicalize_idempotent_and_inner_product_preserving");
    for (auto st : stats_list) {
      for (int rep = 0; rep < 10; ++rep) {
        const auto s = rng.superposition(st, basis, 3, 3);
        const auto probe = rng.superposition(st, basis, 3, 2);
        const auto once = canonicalize(s);
        const auto twice = canonicalize(once);
        if (once.terms().size() != twice.terms().size()) {
          c.fail("term count changed on second pass");
          continue;
        }
        for (std::size_t t = 0; t < once.terms().size(); ++t) {
          c.error(std::abs(once.terms()[t].coefficient - twice.terms()[t].coefficient));
        }
        c.error(std::abs(inner_product(probe, s) - inner_product(probe, once)));
      }
    }
    report.checks.push_back(c.finish());
  }

  // Deformation on a four-mode basis, two particles localized on A and B.
  const auto dbasis = ModeBasis::spin_half({"A", "B", "L", "R"});
  auto random_spec = [&]() {
    DeformationSpec spec;
    spec.pairs.push_back({SingleParticleUnitary(dbasis, rng.unitary(8), "U1"), Region(*dbasis, {"A"})});
    spec.pairs.push_back({SingleParticleUnitary(dbasis, rng.unitary(8), "U2"), Region(*dbasis, {"B", "L"})});
    return spec;
  };
  auto random_pair_state = [&](Statistics st, std::size_t terms) {
    std::vector<ProductKet> ts;
    for (std::size_t t = 0; t < terms; ++t) {
      ts.emplace_back(rng.complex_gaussian(),
                      std::vector<SingleParticleState>{rng.state_on(dbasis, {0, 2}), rng.state_on(dbasis, {1, 3})});
    }
    return NState(st, dbasis, 2, std::move(ts));
  };
  {
    detail::CheckRecorder c("deform_is_linear");
    for (auto st : stats_list) {
      for (int rep = 0; rep < 5; ++rep) {
        const auto spec = random_spec();
        const auto s1 = random_pair_state(st, 2);
        const auto s2 = random_pair_state(st, 2);
        const Complex a = rng.complex_gaussian();
        const Complex b = rng.complex_gaussian();
        const auto lhs = deform(spec, a * s1 + b * s2);
        const auto rhs = a * deform(spec, s1) + b * deform(spec, s2);
        c.error(detail::residual_norm(lhs - rhs));
      }
    }
    report.checks.push_back(c.finish());
  }
  {
    detail::CheckRecorder c("deform_commutes_with_canonicalize");
    for (auto st : stats_list) {
      for (int rep = 0; rep < 5; ++rep) {
        const auto spec = random_spec();
        const auto s = random_pair_state(st, 3);
        c.error(detail::residual_norm(deform(spec, canonicalize(s)) - canonicalize(deform(spec, s))));
      }
    }
    report.checks.push_back(c.finish());
  }

  {
    detail::CheckRecorder c("partition_function_equals_permanent");
    const auto b3 = ModeBasis::spin_half({"S1", "S2", "S3", "X"});
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<SingleParticleState> fs;
      for (int i = 0; i < 3; ++i) fs.push_back(rng.state(b3));
      auto setup = DetectionSetup(b3, {{Region(*b3, {"S1"}), {{"spin", 0}}},
                                       {Region(*b3, {"S2"}), {}},
                                       {Region(*b3, {"S3", "X"}), {{"spin", 1}}}});
      const RMatrix p = detection_matrix(setup, fs);
      c.error(std::abs(partition_function(setup, fs) - std::real(perm(p.cast<Complex>()))));
      const double ind = degree_of_indistinguishability(setup, fs);
      if (ind < -kEqualTolerance || ind > std::log2(6.0) + kEqualTolerance) c.fail("I outside [0, log2 N!]");
    }
    report.checks.push_back(c.finish());
  }

  {
    detail::CheckRecorder c("channels_trace_preserving_and_positive");
    for (auto kind : {ChannelKind::kPhaseDamping, ChannelKind::kDepolarizing, ChannelKind::kAmplitudeDamping}) {
      for (double q : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto ch = KrausChannel::make(kind, q);
        const CMatrix g = rng.matrix(4, 4);
        CMatrix rho = g * g.adjoint();
        rho /= rho.trace().real();
        for (std::size_t qubit : {0u, 1u}) {
          const CMatrix out = apply_local_channel(ch, qubit, rho);
          c.error(std::abs(out.trace() - 1.0));
          Eigen::SelfAdjointEigenSolver<CMatrix> es(out);
          if (es.eigenvalues().minCoeff() < -kEqualTolerance) c.fail("output not PSD");
        }
      }
    }
    report.checks.push_back(c.finish());
  }

  {
    detail::CheckRecorder c("postselection_probability_and_mixed_pure_agreement");
    const SloccRegions regions(dbasis, std::vector<std::vector<std::string>>{{"L"}, {"R"}});
    for (auto st : stats_list) {
      for (int rep = 0; rep < 10; ++rep) {
        const auto s = normalize(NState(st, ProductKet({rng.state(dbasis), rng.state(dbasis)})));
        const auto pure = slocc_postselect_pure(s, regions);
        const auto mixed = slocc_postselect_mixed(Ensemble::pure(s), regions);
        if (pure.probability < -kEqualTolerance || pure.probability > 1.0 + kEqualTolerance) {
          c.fail("probability outside [0, 1]");
        }
        c.error(std::abs(pure.probability - mixed.probability));
        c.error((LabeledDensityMatrix::from_pure(pure.state).matrix - mixed.rho.matrix).cwiseAbs().maxCoeff());
      }
    }
    report.checks.push_back(c.finish());
  }

  {
    detail::CheckRecorder c("concurrence_matches_pure_state_formula");
    for (int rep = 0; rep < 20; ++rep) {
      const LabeledState psi({2, 2}, rng.unit_vector(4));
      const CVector v = psi.amplitudes;
      const double analytic = 2.0 * std::abs(v[0] * v[3] - v[1] * v[2]);
      c.error(std::abs(concurrence(LabeledDensityMatrix::from_pure(psi)) - analytic));
    }
    report.checks.push_back(c.finish());
  }
  return report;
}

}  // namespace nolabel::scenario

#endif  // NOLABEL_SCENARIO_VALIDATE_HPP
