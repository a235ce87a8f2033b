// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <set>

#include "oracle.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

TEST(Werner, FlipExpectationAndTrace) {
  for (std::size_t d : {2, 3, 6}) {
    const CMatrix f = flip_operator(d);
    for (double x : {-1.0, -0.9, 0.0, 0.5, 1.0}) {
      const auto rho = werner_qudit(d, x);
      EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
      EXPECT_NEAR((rho.matrix() * f).trace().real(), x, 1e-12) << "d=" << d << " x=" << x;
    }
  }
}

TEST(Werner, RejectsOutOfRange) {
  EXPECT_THROW(werner_qudit(2, 1.5), std::invalid_argument);
  EXPECT_THROW(werner_qudit(1, 0.0), std::invalid_argument);
}

TEST(Werner, FlipOperatorSwapsFactors) {
  const CMatrix f = flip_operator(3);
  EXPECT_LE((f * f - CMatrix::Identity(9, 9)).cwiseAbs().maxCoeff(), 0.0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(f(j * 3 + i, i * 3 + j), Complex(1.0, 0.0));
}

TEST(Werner, TwoQubitExampleIsSingletMixture) {
  oracle::Vec singlet = oracle::Vec::Zero(4);
  singlet(1) = 1.0 / std::numbers::sqrt2;
  singlet(2) = -1.0 / std::numbers::sqrt2;
  const CMatrix expect = CMatrix::Identity(4, 4) / 6.0 + oracle::projector(singlet) / 3.0;
  EXPECT_LE((werner_2qubit_example4().matrix() - expect).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((werner_qudit(2, 0.0).matrix() - expect).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Example3, HandBuiltMatrixAndEntropies) {
  // ½ Φ⁺ on (first register bit, B) with the second register bit maximally mixed
  CMatrix expect = CMatrix::Zero(8, 8);
  for (int a2 = 0; a2 < 2; ++a2)
    for (int c = 0; c < 2; ++c)
      for (int cp = 0; cp < 2; ++cp) expect((2 * c + a2) * 2 + c, (2 * cp + a2) * 2 + cp) = 0.25;
  const auto rho = example3_state();
  EXPECT_EQ(rho.dims(), (Dims{4, 2}));
  EXPECT_LE((rho.matrix() - expect).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_NEAR(entropy_of(rho, {0}), 2.0, 1e-12);
  EXPECT_NEAR(entropy_of(rho, {1}), 1.0, 1e-12);
  EXPECT_NEAR(von_neumann_entropy(rho), 1.0, 1e-12);
  EXPECT_NEAR(purity(rho), 0.5, 1e-12);
}

TEST(HaarPure, DeterministicAndNormalized) {
  const auto a = haar_random_pure({2, 3}, 17);
  const auto b = haar_random_pure({2, 3}, 17);
  const auto c = haar_random_pure({2, 3}, 18);
  EXPECT_EQ(a.amplitudes(), b.amplitudes());
  EXPECT_NE(a.amplitudes(), c.amplitudes());
  EXPECT_NEAR(a.amplitudes().norm(), 1.0, 1e-12);
}

// E Tr(ρ_A²) = (dA + dB) / (dA dB + 1) for Haar-random pure states.
TEST(HaarPure, MeanMarginalPurity) {
  double sum = 0.0;
  const int n = 3000;
  for (int s = 0; s < n; ++s) sum += purity(partial_trace(haar_random_pure({2, 2}, 1000 + s).to_density(), {0}));
  EXPECT_NEAR(sum / n, 0.8, 0.01);
}

// Induced measure with N = K = 4: E Tr(ρ²) = (N + K) / (N K + 1).
TEST(RandomMixed, MeanPurityOfInducedMeasure) {
  double sum = 0.0;
  const int n = 3000;
  for (int s = 0; s < n; ++s) sum += purity(random_mixed({2, 2}, 0, 5000 + s));
  EXPECT_NEAR(sum / n, 8.0 / 17.0, 0.01);
}

TEST(RandomMixed, RankAndValidity) {
  for (std::size_t r = 1; r <= 4; ++r) {
    const auto rho = random_mixed({2, 2}, r, 9);
    EXPECT_EQ(numerical_rank(rho), r);
    EXPECT_TRUE(validate(rho.dims(), rho.matrix()).ok());
  }
  EXPECT_THROW(random_mixed({2, 2}, 5, 1), std::invalid_argument);
}

TEST(HaarUnitary, UnitaryWithUniformColumnWeights) {
  CounterRng rng(3);
  double mean = 0.0;
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    const CMatrix u = haar_unitary(3, rng);
    EXPECT_LE(unitarity_residual(u), 1e-12);
    mean += std::norm(u(0, 0));
  }
  EXPECT_NEAR(mean / n, 1.0 / 3.0, 0.015);
}

TEST(ClassicalQuantum, BlockDiagonalConstruction) {
  const std::vector<double> p{0.25, 0.75};
  const std::vector<QState> s{random_mixed({2}, 0, 1), random_mixed({2}, 0, 2)};
  const auto rho = classical_quantum(p, s);
  EXPECT_EQ(rho.dims(), (Dims{2, 2}));
  EXPECT_LE((rho.matrix().block(0, 0, 2, 2) - 0.25 * s[0].matrix()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((rho.matrix().block(2, 2, 2, 2) - 0.75 * s[1].matrix()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE(rho.matrix().block(0, 2, 2, 2).cwiseAbs().maxCoeff(), 0.0);
}

TEST(ClassicalQuantum, RejectsBadInput) {
  const std::vector<QState> s{random_mixed({2}, 0, 1), random_mixed({2}, 0, 2)};
  EXPECT_THROW(classical_quantum(std::vector<double>{0.5}, s), std::invalid_argument);
  EXPECT_THROW(classical_quantum(std::vector<double>{0.5, 0.6}, s), std::invalid_argument);
  const std::vector<QState> mixed_dims{random_mixed({2}, 0, 1), random_mixed({3}, 0, 2)};
  EXPECT_THROW(classical_quantum(std::vector<double>{0.5, 0.5}, mixed_dims), std::invalid_argument);
}

TEST(Families, GenerateIsDeterministicPerIndex) {
  StateFamilySpec spec;
  spec.family = Family::random_mixed;
  spec.dims = {2, 3};
  spec.rank = 2;
  spec.seed = 42;
  EXPECT_EQ(generate(spec, 3).matrix(), generate(spec, 3).matrix());
  EXPECT_NE(generate(spec, 3).matrix(), generate(spec, 4).matrix());
  std::set<std::uint64_t> seeds;
  for (std::size_t i = 0; i < 1000; ++i) seeds.insert(sample_seed(42, i));
  EXPECT_EQ(seeds.size(), 1000u);
}

TEST(Families, NamedFamilies) {
  StateFamilySpec spec;
  spec.family = Family::example3;
  EXPECT_EQ(generate(spec, 0).matrix(), example3_state().matrix());
  spec.family = Family::werner_2qubit;
  EXPECT_EQ(generate(spec, 5).matrix(), werner_2qubit_example4().matrix());
  spec.family = Family::haar_pure;
  spec.dims = {2, 2, 2};
  EXPECT_NEAR(purity(generate(spec, 0)), 1.0, 1e-12);
  spec.family = Family::classical_quantum;
  spec.dims = {3, 2};
  spec.rank = 1;
  const auto cq = generate(spec, 0);
  EXPECT_EQ(cq.dims(), (Dims{3, 2}));
}

TEST(Families, TagsRoundTrip) {
  for (auto f : {Family::werner_qudit, Family::werner_2qubit, Family::example3, Family::classical_quantum,
                 Family::haar_pure, Family::random_mixed}) {
    EXPECT_EQ(family_from_string(to_string(f)), f);
  }
  EXPECT_THROW(family_from_string("ghz"), std::invalid_argument);
}

TEST(Families, CheckRejectsBadParameters) {
  StateFamilySpec spec;
  spec.family = Family::random_mixed;
  spec.dims = {2, 1};
  EXPECT_THROW(spec.check(), std::invalid_argument);
  spec.dims = {2, 2};
  spec.rank = 9;
  EXPECT_THROW(spec.check(), std::invalid_argument);
  spec.family = Family::werner_qudit;
  spec.x = 2.0;
  EXPECT_THROW(spec.check(), std::invalid_argument);
  spec.family = Family::classical_quantum;
  spec.dims = {2, 2};
  spec.rank = 0;
  spec.weights = {1.0};
  EXPECT_THROW(spec.check(), std::invalid_argument);
}
