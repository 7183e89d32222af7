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
#include "nolabel/random.hpp"
#include "oracle.hpp"

namespace {

using namespace nolabel;

const auto kBoson = Statistics::boson();
const auto kFermion = Statistics::fermion();

TEST(Overlap, ConjugateLinearInBra) {
  const auto b = ModeBasis::spin_half({"L", "R"});
  const Complex l{0.3, 0.4}, r{0.1, -0.2}, lp{-0.5, 0.2}, rp{0.7, 0.1};
  const auto psi = SingleParticleState::product(b, (CVector(2) << l, r).finished(), (CVector(2) << 1, 0).finished());
  const auto phi = SingleParticleState::product(b, (CVector(2) << lp, rp).finished(), (CVector(2) << 1, 0).finished());
  EXPECT_NEAR(std::abs(overlap(psi, phi) - (std::conj(l) * lp + std::conj(r) * rp)), 0.0, 1e-15);
  const auto a = SingleParticleState::basis_vector(b, "L");
  const auto c = SingleParticleState::basis_vector(b, "R");
  EXPECT_EQ(overlap(a, c), Complex(0.0));
  EXPECT_NEAR(std::abs(overlap(a, a) - 1.0), 0.0, 1e-15);
  EXPECT_THROW(overlap(a, SingleParticleState::basis_vector(ModeBasis::spin_half({"L"}), "L")), Error);
}

TEST(Permanent, TwoByTwoAndDiagonal) {
  CMatrix m(2, 2);
  const Complex a{1, 2}, b{3, -1}, c{0.5, 0.5}, d{-2, 1};
  m << a, b, c, d;
  EXPECT_NEAR(std::abs(permanent(m) - (a * d + b * c)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(determinant(m) - (a * d - b * c)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(eta_sum(m, kBoson) - (a * d + b * c)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(eta_sum(m, kFermion) - (a * d - b * c)), 0.0, 1e-14);
  CMatrix diag = CMatrix::Zero(5, 5);
  Complex prod = 1.0;
  for (int i = 0; i < 5; ++i) {
    diag(i, i) = Complex(i + 1.0, 0.5 * i);
    prod *= diag(i, i);
  }
  EXPECT_NEAR(std::abs(permanent(diag) - prod), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(determinant(diag) - prod), 0.0, 1e-12);
}

TEST(Permanent, MatchesPermutationSumUpToSix) {
  RandomSource rng(3);
  for (Eigen::Index n = 1; n <= 6; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      const CMatrix m = rng.matrix(n, n);
      EXPECT_NEAR(std::abs(permanent(m) - oracle::naive_permanent(m)), 0.0, 1e-9) << "n=" << n;
      EXPECT_NEAR(std::abs(determinant(m) - oracle::naive_determinant(m)), 0.0, 1e-9) << "n=" << n;
    }
  }
}

TEST(Permanent, RealScalarsAndKnownValues) {
  // per(J_n) = n! for the all-ones matrix.
  for (int n = 1; n <= 10; ++n) {
    const RMatrix ones = RMatrix::Ones(n, n);
    EXPECT_NEAR(permanent(ones), oracle::factorial(static_cast<std::size_t>(n)), 1e-6);
  }
  EXPECT_DOUBLE_EQ(permanent(RMatrix(0, 0)), 1.0);
  EXPECT_DOUBLE_EQ(determinant(RMatrix(0, 0)), 1.0);
}

TEST(Determinant, SingularAndPivoting) {
  CMatrix m(3, 3);
  m << 0, 1, 2, 1, 0, 3, 4, -3, 8;
  EXPECT_NEAR(std::abs(determinant(m) - oracle::naive_determinant(m)), 0.0, 1e-12);
  CMatrix s(3, 3);
  s << 1, 2, 3, 2, 4, 6, 0, 1, 1;
  EXPECT_NEAR(std::abs(determinant(s)), 0.0, 1e-12);
}

TEST(Kernels, RejectNonSquareAndOversize) {
  EXPECT_THROW(permanent(CMatrix::Zero(2, 3)), Error);
  EXPECT_THROW(determinant(CMatrix::Zero(3, 2)), Error);
  EXPECT_THROW(permanent(CMatrix::Zero(kMaxPermanentSize + 1, kMaxPermanentSize + 1)), Error);
}

TEST(InnerProduct, NormIdentityTwoParticles) {
  RandomSource rng(17);
  const auto b = ModeBasis::spin_half({"A", "B", "C"});
  for (auto st : {kBoson, kFermion}) {
    for (int rep = 0; rep < 50; ++rep) {
      const auto p1 = rng.state(b);
      const auto p2 = rng.state(b);
      const NState s(st, ProductKet({p1, p2}));
      const double expect = 1.0 + st.eta() * std::norm(oracle::dot(p1, p2));
      EXPECT_NEAR(std::abs(inner_product(s, s) - expect), 0.0, 1e-9);
    }
  }
}

TEST(InnerProduct, BosonOverlapHalfGivesThreeHalves) {
  const auto b = ModeBasis::make({"A", "B"}, {});
  const auto p1 = SingleParticleState::basis_vector(b, "A");
  const auto p2 = SingleParticleState(b, (CVector(2) << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)).finished());
  const NState s(kBoson, ProductKet({p1, p2}));
  EXPECT_NEAR(inner_product(s, s).real(), 1.5, 1e-12);
  EXPECT_NEAR(norm(s), std::sqrt(1.5), 1e-12);
  EXPECT_NEAR(norm(normalize(s)), 1.0, 1e-12);
}

TEST(InnerProduct, DisjointFactorsAreNormalized) {
  const auto b = ModeBasis::spin_half({"A", "B", "C", "D"});
  for (auto st : {kBoson, kFermion}) {
    const NState s(st, ProductKet({SingleParticleState::basis_vector(b, "A"), SingleParticleState::basis_vector(b, "B", 1),
                                   SingleParticleState::basis_vector(b, "C"), SingleParticleState::basis_vector(b, "D")}));
    EXPECT_NEAR(std::abs(inner_product(s, s) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(norm(s), 1.0, 1e-12);
  }
}

TEST(InnerProduct, PauliExclusionAndDegenerateNormalize) {
  RandomSource rng(2);
  const auto b = ModeBasis::spin_half({"A", "B"});
  const auto psi = rng.state(b);
  const NState s(kFermion, ProductKet({psi, psi}));
  EXPECT_NEAR(std::abs(inner_product(s, s)), 0.0, 1e-12);
  EXPECT_THROW(normalize(s), Error);
  try {
    normalize(s);
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateState);
  }
}

TEST(InnerProduct, MismatchedStatisticsOrParticles) {
  const auto b = ModeBasis::spin_half({"A", "B"});
  const auto a = SingleParticleState::basis_vector(b, "A");
  const NState bos(kBoson, ProductKet({a, a}));
  const NState fer(kFermion, ProductKet({a, a}));
  const NState one(kBoson, ProductKet({a}));
  EXPECT_THROW(inner_product(bos, fer), Error);
  EXPECT_THROW(inner_product(bos, one), Error);
}

TEST(InnerProduct, HermitianAndSwapRule) {
  RandomSource rng(23);
  const auto b = ModeBasis::spin_half({"A", "B"});
  for (auto st : {kBoson, kFermion}) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto x = rng.superposition(st, b, 3, 3);
      const auto y = rng.superposition(st, b, 3, 2);
      EXPECT_NEAR(std::abs(inner_product(x, y) - std::conj(inner_product(y, x))), 0.0, 1e-9);
      EXPECT_GT(inner_product(x, x).real(), -1e-9);
      auto k = rng.product_ket(b, 3);
      const Complex before = inner_product(x, NState(st, k));
      std::swap(k.factors[1], k.factors[2]);
      EXPECT_NEAR(std::abs(inner_product(x, NState(st, k)) - static_cast<double>(st.eta()) * before), 0.0, 1e-9);
    }
  }
}

// N! <S phi|S psi> in the labeled tensor space; the constant N! is fixed by
// the two-particle case, where it reproduces 1 + eta |<psi1|psi2>|^2.
TEST(InnerProduct, MatchesFirstQuantizedOracle) {
  RandomSource rng(29);
  {
    const auto b = ModeBasis::make({"A", "B"}, {});
    const auto p1 = rng.state(b);
    const auto p2 = rng.state(b);
    for (auto st : {kBoson, kFermion}) {
      const NState s(st, ProductKet({p1, p2}));
      EXPECT_NEAR(std::abs(oracle::inner_product(s, s) - (1.0 + st.eta() * std::norm(oracle::dot(p1, p2)))), 0.0,
                  1e-12);
    }
  }
  for (std::size_t dim : {1u, 2u, 3u, 4u}) {
    std::vector<std::string> modes;
    for (std::size_t m = 0; m < dim; ++m) modes.push_back("m" + std::to_string(m));
    const auto b = ModeBasis::make(modes, {});
    for (std::size_t n = 1; n <= 4; ++n) {
      for (auto st : {kBoson, kFermion}) {
        for (int rep = 0; rep < 3; ++rep) {
          const auto x = rng.superposition(st, b, n, 2);
          const auto y = rng.superposition(st, b, n, 2);
          EXPECT_NEAR(std::abs(inner_product(x, y) - oracle::inner_product(x, y)), 0.0, 1e-9)
              << "dim=" << dim << " n=" << n;
        }
      }
    }
  }
}

}  // namespace
