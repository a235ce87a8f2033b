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

#include "oracle.hpp"
#include "qcorr/verify.hpp"

using namespace qcorr;

namespace {

const OptimizerConfig kCfg{};

QState bell() { return QState({2, 2}, oracle::projector(oracle::bell_phi_plus())); }

QState ghz() {
  CVector v = CVector::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return PureStateVector({2, 2, 2}, v).to_density();
}

// Σ p_k |kk><kk|: no discord on either side, E_F zero everywhere.
QState classical_classical(const std::vector<double>& p) {
  const auto n = p.size();
  CMatrix m = CMatrix::Zero(n * n, n * n);
  for (std::size_t k = 0; k < n; ++k) m(k * n + k, k * n + k) = p[k];
  return QState({n, n}, m);
}

double value_of(const BoundCheck& c, const std::string& name) {
  for (const auto& [k, v] : c.values) {
    if (k == name) return v;
  }
  throw std::out_of_range(name);
}

}  // namespace

TEST(Constructors, InequalityIdentitySkipped) {
  const auto a = make_inequality("r", 1.0, 1.0 - 5e-10, 1e-9);
  EXPECT_TRUE(a.holds);
  EXPECT_NEAR(a.slack, -5e-10, 1e-15);
  EXPECT_EQ(a.kind, CheckKind::inequality);
  EXPECT_FALSE(make_inequality("r", 1.0, 0.9, 1e-9).holds);
  EXPECT_TRUE(make_inequality("r", 1.0, 0.9, 1e-9).failed());

  const auto b = make_identity("r", 0.5, 0.4, 0.2);
  EXPECT_EQ(b.kind, CheckKind::identity);
  EXPECT_NEAR(b.slack, 0.1, 1e-15);
  EXPECT_TRUE(b.holds);
  EXPECT_FALSE(make_identity("r", 0.5, 0.2, 0.2).holds);

  const auto s = make_skipped("r", "why");
  EXPECT_TRUE(s.skipped);
  EXPECT_FALSE(s.failed());
  EXPECT_EQ(s.reason, "why");
}

TEST(MutualInformationBound, BellSaturatesAndProductHasFullSlack) {
  const auto c = check_eq5(bell());
  EXPECT_NEAR(c.lhs, 2.0, 1e-12);
  EXPECT_NEAR(c.slack, 0.0, 1e-12);
  EXPECT_TRUE(c.holds);

  const auto rho = tensor(random_mixed({2}, 0, 1), random_mixed({3}, 0, 2));
  const double s_a = oracle::entropy(oracle::trace_second(rho.matrix(), 2, 3));
  const double s_b = oracle::entropy(oracle::trace_first(rho.matrix(), 2, 3));
  const auto p = check_eq5(rho);
  EXPECT_NEAR(p.lhs, 0.0, 1e-12);
  EXPECT_NEAR(p.slack, 2.0 * std::min(s_a, s_b), 1e-12);
}

TEST(DiscordCeiling, HoldsOnRandomStates) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto c = check_conj1(random_mixed({2, 3}, 0, 40 + s), kCfg);
    EXPECT_TRUE(c.holds) << c.lhs << " vs " << c.rhs;
    EXPECT_DOUBLE_EQ(c.tolerance, tol::kDiscordCeiling);
  }
}

TEST(PureStates, KoashiWinterAndAsymmetryBoundsVanish) {
  // pure AB: C is trivial, so E_F(BC) = E_F(AC) = 0 and the purification is AB itself
  const auto psi = haar_random_pure({2, 2}, 9).to_density();
  const double s_b = oracle::entropy(oracle::trace_first(psi.matrix(), 2, 2));

  const auto kw = check_koashi_winter(psi, kCfg);
  ASSERT_FALSE(kw.skipped) << kw.reason;
  EXPECT_NEAR(value_of(kw, "E_F(BC)"), 0.0, 1e-12);
  EXPECT_NEAR(value_of(kw, "J_A"), s_b, 1e-6);
  EXPECT_TRUE(kw.holds);

  const auto e8 = check_eq8(psi, kCfg);
  EXPECT_TRUE(e8.holds);
  EXPECT_NEAR(value_of(e8, "D_A"), s_b, 1e-6);

  const auto t2 = check_thm2(psi, kCfg);
  ASSERT_FALSE(t2.bound.skipped) << t2.bound.reason;
  EXPECT_NEAR(t2.bound.rhs, 0.0, 1e-10);
  EXPECT_NEAR(t2.bound.lhs, 0.0, 2e-4);
  EXPECT_TRUE(t2.bound.holds);
  EXPECT_TRUE(t2.identity.holds);

  const auto c2 = check_cor2(psi, kCfg);
  ASSERT_FALSE(c2.skipped);
  EXPECT_TRUE(c2.holds);
  ASSERT_TRUE(c2.equality.has_value());
  EXPECT_TRUE(*c2.equality);  // D_B = S(A) = J_B for a pure state
}

TEST(AsymmetryBound, ClassicalClassicalState) {
  const std::vector<double> p{0.2, 0.3, 0.5};
  const auto rho = classical_classical(p);
  const double h = oracle::xlog2x(0.2) + oracle::xlog2x(0.3) + oracle::xlog2x(0.5);
  const auto t2 = check_thm2(rho, kCfg);
  ASSERT_FALSE(t2.bound.skipped) << t2.bound.reason;
  EXPECT_NEAR(t2.bound.rhs, h, 1e-12);
  EXPECT_NEAR(t2.bound.lhs, 0.0, 1e-7);
  EXPECT_TRUE(t2.bound.holds);
  EXPECT_NEAR(t2.identity.rhs, 0.0, 1e-12);
  EXPECT_TRUE(t2.identity.holds);
}

TEST(AsymmetryBound, SkippedWhenHypothesisUnmet) {
  const auto t2 = check_thm2(random_mixed({2, 2}, 0, 3), kCfg);
  EXPECT_TRUE(t2.bound.skipped);
  EXPECT_TRUE(t2.identity.skipped);
  EXPECT_EQ(t2.identity.relation, "thm2_note");
  EXPECT_TRUE(check_cor2(random_mixed({2, 2}, 0, 3), kCfg).skipped);
}

TEST(PurifiedUpperBound, Example3SaturatesWithEqualityCondition) {
  const auto c = check_thm1(example3_state(), kCfg);
  EXPECT_NEAR(c.rhs, 1.0, 1e-9);
  EXPECT_NEAR(c.lhs, 1.0, 1e-3);
  EXPECT_TRUE(c.holds);
  ASSERT_TRUE(c.equality.has_value());
  EXPECT_TRUE(*c.equality);
  EXPECT_TRUE(check_cor1(example3_state(), kCfg).holds);
}

TEST(PurifiedUpperBound, EqualityConditionFalseForGenericState) {
  const auto c = check_thm1(random_mixed({2, 2}, 2, 17), kCfg);
  EXPECT_TRUE(c.holds);
  ASSERT_TRUE(c.equality.has_value());
  EXPECT_FALSE(*c.equality);
}

TEST(DiscordVsClassical, Example4IsASurveyViolation) {
  const auto c = check_lindblad_lemma3(werner_2qubit_example4(), kCfg);
  EXPECT_TRUE(c.survey);
  EXPECT_FALSE(c.holds);
  EXPECT_FALSE(c.failed());
  EXPECT_NEAR(c.lhs - c.rhs, 0.0440, 1e-3);
}

TEST(DiscordVsClassical, GatingOnClassicalQuantumStates) {
  StateFamilySpec spec;
  spec.family = Family::classical_quantum;
  spec.dims = {2, 2};
  spec.rank = 1;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto c = check_lindblad_lemma3(generate(spec, i), kCfg);
    EXPECT_FALSE(c.survey) << c.reason;
    EXPECT_TRUE(c.holds);
  }
}

TEST(ConditionalEntropySum, GhzAndRandomPurifications) {
  const auto g = check_eq12(ghz());
  EXPECT_NEAR(g.lhs, 0.0, 1e-12);
  EXPECT_TRUE(g.holds);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto abc = purified_abc(random_mixed({2, 3}, 0, 60 + s));
    EXPECT_EQ(abc.dims(), (Dims{2, 3, 6}));
    const auto c = check_eq12(abc);
    EXPECT_LE(c.slack, 1e-9);
  }
}

TEST(Monogamy, GhzAndMixedRejected) {
  // GHZ: D_A(AB) = 0 (classical correlations), J_A(AC) = 1, S(A) = 1
  const auto c = check_monogamy(ghz(), kCfg);
  EXPECT_NEAR(c.rhs, 1.0, 1e-12);
  EXPECT_NEAR(value_of(c, "J_A(AC)"), 1.0, 1e-6);
  EXPECT_TRUE(c.holds);
  EXPECT_THROW(check_monogamy(random_mixed({2, 2, 2}, 0, 1), kCfg), std::invalid_argument);
  EXPECT_THROW(check_eq12(random_mixed({2, 2, 2}, 0, 1)), std::invalid_argument);
}

TEST(KwPointwise, GhzComputationalBasis) {
  const auto c = check_kw_pointwise(ghz(), computational_measurement(0, 2));
  EXPECT_NEAR(c.lhs, 1.0, 1e-12);
  EXPECT_NEAR(c.rhs, 1.0, 1e-12);
  CounterRng rng(3);
  const auto abc = purified_abc(random_mixed({3, 2}, 0, 5));
  const auto m = make_projective({0}, haar_unitary(3, rng));
  EXPECT_LE(check_kw_pointwise(abc, m).slack, 1e-9);
  EXPECT_THROW(check_kw_pointwise(abc, computational_measurement(1, 2)), std::invalid_argument);
}

// A trivial A with a pure BC: D_BC vanishes and the product bound is
// D_B + D_C = S(B) + S(C), i.e. subadditivity 0 <= S(B) + S(C). The default
// simplex tolerance leaves ~1e-9 in each estimate, so this runs tighter.
TEST(SubadditiveDephasingDiscord, DegenerateTrivialFirstSubsystem) {
  OptimizerConfig tight;
  tight.tol = 1e-12;
  const auto bc = haar_random_pure({2, 2}, 31).to_density();
  const QState rho({1, 2, 2}, bc.matrix());
  const double s_b = oracle::entropy(oracle::trace_second(bc.matrix(), 2, 2));
  const double s_c = oracle::entropy(oracle::trace_first(bc.matrix(), 2, 2));
  const auto t = check_thm3(rho, tight);
  EXPECT_NEAR(value_of(t.aggregate, "D_B"), s_b, 1e-9);
  EXPECT_NEAR(value_of(t.aggregate, "D_C"), s_c, 1e-9);
  EXPECT_NEAR(t.aggregate.lhs, 0.0, 1e-9);
  EXPECT_NEAR(t.aggregate.slack, s_b + s_c, 1e-9);
  EXPECT_TRUE(t.chain.holds);
  EXPECT_TRUE(t.aggregate.holds);
}

TEST(SubadditiveDephasingDiscord, ClassicalTripartiteStateHasNoDiscord) {
  CMatrix m = CMatrix::Zero(8, 8);
  m(0, 0) = 0.5;
  m(3, 3) = 0.2;
  m(6, 6) = 0.3;
  const auto t = check_thm3(QState({2, 2, 2}, m), kCfg);
  EXPECT_NEAR(t.chain.lhs, 0.0, 1e-9);
  EXPECT_NEAR(t.chain.rhs, 0.0, 1e-9);
  EXPECT_NEAR(t.aggregate.rhs, 0.0, 1e-9);
}

TEST(SubadditiveDephasingDiscord, RandomStatesChainIsExact) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto t = check_thm3(random_mixed({2, 2, 2}, 0, 80 + s), kCfg);
    EXPECT_TRUE(t.chain.holds);
    EXPECT_LE(value_of(t.chain, "chain residual"), 1e-9);
    EXPECT_TRUE(t.aggregate.holds);
  }
}

TEST(Suite, PurifiedStatesPassExactRelations) {
  StateFamilySpec spec;
  spec.family = Family::random_mixed;
  spec.dims = {2, 2};
  const auto rep = run_suite(spec, {"eq5", "eq12"}, 100, kCfg);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.summary.at("eq5").pass, 100u);
  EXPECT_EQ(rep.summary.at("eq12").pass, 100u);
  EXPECT_EQ(rep.rows.size(), 200u);
  EXPECT_EQ(rep.suite_id, "eq5+eq12/random_mixed/2x2/seed1");
  EXPECT_EQ(rep.rows[3].provenance.sample, 1u);
  EXPECT_EQ(rep.rows[3].provenance.sample_seed, sample_seed(spec.seed, 1));
}

TEST(Suite, WorkersDoNotChangeResults) {
  StateFamilySpec spec;
  spec.family = Family::random_mixed;
  spec.dims = {2, 2};
  spec.rank = 2;
  const auto a = run_suite(spec, {"kw", "lindblad"}, 8, kCfg, 1);
  const auto b = run_suite(spec, {"kw", "lindblad"}, 8, kCfg, 3);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].relation, b.rows[i].relation);
    EXPECT_EQ(a.rows[i].lhs, b.rows[i].lhs);
    EXPECT_EQ(a.rows[i].rhs, b.rows[i].rhs);
  }
}

TEST(Suite, PointwiseRowsPerSampleAndSkips) {
  StateFamilySpec spec;
  spec.family = Family::haar_pure;
  spec.dims = {2, 2, 2};
  const auto rep = run_suite(spec, {"kw_pointwise", "thm3"}, 2, kCfg);
  EXPECT_EQ(rep.summary.at("kw_pointwise").pass, 2 * kPointwiseMeasurements);
  EXPECT_EQ(rep.summary.at("thm3a").pass, 2u);
  EXPECT_EQ(rep.summary.at("thm3b").pass, 2u);

  // a mixed four-party state has no three-party form
  spec.family = Family::random_mixed;
  spec.dims = {2, 2, 2, 2};
  const auto four = run_suite(spec, {"thm3", "eq12"}, 1, kCfg);
  EXPECT_EQ(four.summary.at("thm3a").skip, 1u);
  EXPECT_EQ(four.summary.at("eq12").skip, 1u);
}

TEST(Suite, RejectsUnknownRelation) {
  StateFamilySpec spec;
  EXPECT_THROW(run_suite(spec, {"eq99"}, 1, kCfg), std::invalid_argument);
  EXPECT_THROW(run_suite(spec, {}, 1, kCfg), std::invalid_argument);
  EXPECT_EQ(known_relations().size(), 13u);
}
