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

#include <cmath>

#include "nolabel/kernels.hpp"
#include "nolabel/presets.hpp"
#include "nolabel/random.hpp"
#include "nolabel/state.hpp"
#include "oracle.hpp"

namespace {

using namespace nolabel;

const auto kBoson = Statistics::boson();
const auto kFermion = Statistics::fermion();

TEST(Statistics, EtaValues) {
  EXPECT_EQ(kBoson.eta(), 1);
  EXPECT_EQ(kFermion.eta(), -1);
  EXPECT_EQ(parse_statistics("boson")->eta(), 1);
  EXPECT_EQ(parse_statistics("fermion")->eta(), -1);
  EXPECT_FALSE(parse_statistics("anyon").has_value());
  EXPECT_EQ(kFermion.sign(1), -1.0);
  EXPECT_EQ(kFermion.sign(2), 1.0);
  EXPECT_EQ(kBoson.sign(1), 1.0);
}

TEST(ModeBasis, IndexLayoutAndLookup) {
  const auto b = ModeBasis::make({"A", "B"}, {{"spin", 2}, {"pol", 3}});
  EXPECT_EQ(b->internal_size(), 6u);
  EXPECT_EQ(b->dim(), 12u);
  EXPECT_EQ(b->index(1, 4), 10u);
  EXPECT_EQ(b->mode_index("B"), 1u);
  EXPECT_FALSE(b->find_mode("C").has_value());
  EXPECT_EQ(b->config_index({1, 2}), 5u);
  EXPECT_EQ(b->dof_value(5, 0), 1u);
  EXPECT_EQ(b->dof_value(5, 1), 2u);
}

TEST(ModeBasis, RejectsDuplicatesAndEmptyDofs) {
  EXPECT_THROW(ModeBasis({"A", "A"}, {{"spin", 2}}), Error);
  EXPECT_THROW(ModeBasis({"A"}, {{"spin", 0}}), Error);
  EXPECT_THROW(ModeBasis({"A"}, {{"s", 2}, {"s", 2}}), Error);
  EXPECT_THROW(ModeBasis::spin_half({"A"})->mode_index("Z"), Error);
}

TEST(Region, SortedUniqueAndDisjointness) {
  const auto b = ModeBasis::spin_half({"A", "B", "C"});
  const Region r(*b, {"C", "A", "C"});
  EXPECT_EQ(r.size(), 2u);
  EXPECT_TRUE(r.contains(0));
  EXPECT_FALSE(r.contains(1));
  EXPECT_FALSE(r.disjoint(Region(*b, {"A"})));
  EXPECT_TRUE(r.disjoint(Region(*b, {"B"})));
  EXPECT_TRUE(Region::whole(*b).covers_all());
  EXPECT_THROW(Region(*b, {}), Error);
  EXPECT_THROW(Region(*b, {"Q"}), Error);
}

TEST(SingleParticleState, ProductAndWeights) {
  const auto b = ModeBasis::spin_half({"L", "R"});
  CVector spatial(2), spin(2);
  spatial << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  spin << 1.0, 0.0;
  const auto psi = SingleParticleState::product(b, spatial, spin);
  EXPECT_NEAR(psi.norm_squared(), 1.0, 1e-12);
  EXPECT_NEAR(psi.weight_in(Region(*b, {"L"})), 0.5, 1e-12);
  EXPECT_EQ(psi.support(), (std::vector<std::size_t>{0, 1}));
  EXPECT_THROW(SingleParticleState(b, CVector::Zero(3)), Error);
  EXPECT_THROW(SingleParticleState::zero(b).normalized(), Error);
}

TEST(ProductKet, RejectsMixedBasesAndEmpty) {
  const auto b1 = ModeBasis::spin_half({"A"});
  const auto b2 = ModeBasis::spin_half({"A", "B"});
  EXPECT_THROW(ProductKet(std::vector<SingleParticleState>{}), Error);
  EXPECT_THROW(ProductKet({SingleParticleState::basis_vector(b1, "A"), SingleParticleState::basis_vector(b2, "A")}),
               Error);
}

TEST(NState, RejectsMixedParticleNumbers) {
  const auto b = ModeBasis::spin_half({"A", "B"});
  const auto a = SingleParticleState::basis_vector(b, "A");
  std::vector<ProductKet> terms{ProductKet({a}), ProductKet({a, a})};
  EXPECT_THROW(NState(kBoson, b, 1, terms), Error);
}

TEST(Canonicalize, FermionSwapPicksUpSign) {
  const auto b = ModeBasis::spin_half({"A", "B"});
  const auto p1 = SingleParticleState::basis_vector(b, "A");
  const auto p2 = SingleParticleState::basis_vector(b, "B");
  const NState swapped(kFermion, ProductKet({p2, p1}));
  const NState ordered(kFermion, ProductKet({p1, p2}));
  const auto c1 = canonicalize(swapped);
  const auto c2 = canonicalize(ordered);
  ASSERT_EQ(c1.terms().size(), 1u);
  ASSERT_EQ(c2.terms().size(), 1u);
  EXPECT_TRUE(approx_equal(c1.terms()[0].factors[0], c2.terms()[0].factors[0]));
  EXPECT_NEAR(std::abs(c1.terms()[0].coefficient + c2.terms()[0].coefficient), 0.0, 1e-15);
}

TEST(Canonicalize, BosonMergeDoubles) {
  const auto b = ModeBasis::spin_half({"A", "B"});
  const auto p1 = SingleParticleState::basis_vector(b, "A", 1);
  const auto p2 = SingleParticleState::basis_vector(b, "B");
  const NState s(kBoson, b, 2, {ProductKet({p1, p2}), ProductKet({p2, p1})});
  const auto c = canonicalize(s);
  ASSERT_EQ(c.terms().size(), 1u);
  EXPECT_NEAR(std::abs(c.terms()[0].coefficient - 2.0), 0.0, 1e-15);
}

TEST(Canonicalize, FermionPairCancelsAndDoubleOccupancyHasZeroNorm) {
  const auto b = ModeBasis::spin_half({"A", "B"});
  const auto p1 = SingleParticleState::basis_vector(b, "A");
  const auto p2 = SingleParticleState::basis_vector(b, "B");
  const NState s(kFermion, b, 2, {ProductKet({p1, p2}), ProductKet({p2, p1})});
  EXPECT_TRUE(canonicalize(s).terms().empty());
  const auto pauli = canonicalize(NState(kFermion, ProductKet({p1, p1})));
  EXPECT_NEAR(norm(pauli), 0.0, 1e-12);
}

TEST(Canonicalize, IdempotentAndPreservesInnerProducts) {
  RandomSource rng(11);
  const auto b = ModeBasis::spin_half({"A", "B"});
  for (auto st : {kBoson, kFermion}) {
    for (int rep = 0; rep < 25; ++rep) {
      const auto s = rng.superposition(st, b, 3, 4);
      const auto probe = rng.superposition(st, b, 3, 2);
      const auto once = canonicalize(s);
      const auto twice = canonicalize(once);
      ASSERT_EQ(once.terms().size(), twice.terms().size());
      for (std::size_t t = 0; t < once.terms().size(); ++t) {
        EXPECT_EQ(once.terms()[t].coefficient, twice.terms()[t].coefficient);
      }
      EXPECT_NEAR(std::abs(inner_product(probe, s) - inner_product(probe, once)), 0.0, 1e-9);
      EXPECT_NEAR(std::abs(oracle::inner_product(probe, s) - oracle::inner_product(probe, once)), 0.0, 1e-9);
    }
  }
}

TEST(Canonicalize, FermionKetWithRepeatedFactorIsOrthogonalToEverything) {
  RandomSource rng(5);
  const auto b = ModeBasis::spin_half({"A", "B"});
  const auto psi = rng.state(b);
  const NState doubled(kFermion, ProductKet({psi, rng.state(b), psi}));
  for (int rep = 0; rep < 10; ++rep) {
    const auto probe = rng.superposition(kFermion, b, 3, 2);
    EXPECT_NEAR(std::abs(inner_product(probe, doubled)), 0.0, 1e-9);
  }
}

TEST(Ensemble, ValidatesWeights) {
  const auto b = ModeBasis::spin_half({"A", "B"});
  const NState s(kBoson, ProductKet({SingleParticleState::basis_vector(b, "A")}));
  EXPECT_NO_THROW(Ensemble({{0.25, s}, {0.75, s}}));
  EXPECT_THROW(Ensemble({{0.5, s}, {0.4, s}}), Error);
  EXPECT_THROW(Ensemble({{-0.5, s}, {1.5, s}}), Error);
  EXPECT_THROW(Ensemble(std::vector<Ensemble::Member>{}), Error);
}

TEST(Presets, ProductAndBellStates) {
  const auto b = ModeBasis::spin_half({"A", "B", "L", "R"});
  for (auto st : {kBoson, kFermion}) {
    const auto prod = build_preset("product_AB", st, b);
    EXPECT_NEAR(norm(prod), 1.0, 1e-12);
    EXPECT_NEAR(norm(build_preset("bell_singlet", st, b)), 1.0, 1e-12);
    EXPECT_NEAR(norm(build_preset("bell_triplet", st, b)), 1.0, 1e-12);
  }
  EXPECT_THROW(build_preset("ghz", kBoson, b), Error);
  EXPECT_THROW(build_preset("custom", kBoson, b), Error);
}

TEST(Presets, SingletOnOneModeHasSquaredNormTwo) {
  // Both particles on A: the ket |A up, A down> - |A down, A up> over sqrt(2).
  // For fermions each term has squared norm 1 and the cross terms add
  // -eta = +1 each, so <Psi|Psi> = (1 + 1 + 1 + 1) / 2 = 2.
  const auto b = ModeBasis::spin_half({"A", "B"});
  PresetParams p;
  p.mode_b = "A";
  const auto s = build_preset("bell_singlet", kFermion, b, p);
  const auto up = SingleParticleState::basis_vector(b, "A", kSpinUp);
  const auto dn = SingleParticleState::basis_vector(b, "A", kSpinDown);
  const double h = 1.0 / std::sqrt(2.0);
  CMatrix m(2, 2);
  Complex by_hand = 0.0;
  for (auto [ci, bra] : {std::pair{h, std::vector{up, dn}}, {-h, std::vector{dn, up}}}) {
    for (auto [cj, ket] : {std::pair{h, std::vector{up, dn}}, {-h, std::vector{dn, up}}}) {
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i, j) = oracle::dot(bra[i], ket[j]);
      by_hand += ci * cj * (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
    }
  }
  EXPECT_NEAR(by_hand.real(), 2.0, 1e-12);
  EXPECT_NEAR(inner_product(s, s).real(), 2.0, 1e-12);
  EXPECT_NEAR(oracle::inner_product(s, s).real(), 2.0, 1e-12);
}

}  // namespace
