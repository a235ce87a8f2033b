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
#include "qcorr/measurement.hpp"
#include "qcorr/optimize.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {

std::vector<double> random_params(std::size_t d, std::uint64_t seed) {
  CounterRng rng(seed);
  return random_measurement_params(d, rng);
}

}  // namespace

TEST(Givens, ProducesUnitaries) {
  for (std::size_t d : {2, 3, 4, 6}) {
    EXPECT_EQ(measurement_param_count(d), d * d - d);
    for (std::uint64_t s = 0; s < 5; ++s) EXPECT_LE(unitarity_residual(givens_unitary(d, random_params(d, s))), 1e-12);
    const std::vector<double> zeros(measurement_param_count(d), 0.0);
    EXPECT_LE((givens_unitary(d, zeros) - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Givens, RejectsWrongParameterCount) {
  const std::vector<double> p(3, 0.1);
  EXPECT_THROW(givens_unitary(2, p), std::invalid_argument);
}

TEST(Givens, QubitMatchesBlochRotation) {
  // one angle θ and one phase φ: first column (cos θ, e^{iφ} sin θ)
  const double theta = 0.7, phi = 1.9;
  const std::vector<double> p{theta, phi};
  const CMatrix u = givens_unitary(2, p);
  EXPECT_NEAR(std::abs(u(0, 0) - std::cos(theta)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u(1, 0) - std::polar(std::sin(theta), phi)), 0.0, 1e-15);
}

// Every rank-1 projective measurement is reachable: for Haar targets the
// optimizer drives 1 - (1/d) Σ_k |<b_k|u_k>|² to zero.
TEST(Givens, SurjectiveOntoProjectiveMeasurements) {
  OptimizerConfig cfg;
  cfg.restarts = 8;
  cfg.tol = 1e-14;
  for (std::size_t d : {2, 3}) {
    CounterRng rng(77 + d);
    for (int t = 0; t < 3; ++t) {
      const CMatrix target = haar_unitary(d, rng);
      const Objective f = [&](std::span<const double> p) {
        const CMatrix b = givens_unitary(d, p);
        double overlap = 0.0;
        for (std::size_t k = 0; k < d; ++k) overlap += std::norm(b.col(k).dot(target.col(k)));
        return 1.0 - overlap / static_cast<double>(d);
      };
      const auto r = minimize_over_measurements(f, d, cfg);
      EXPECT_LE(r.value, 1e-8) << "d=" << d << " target " << t;
    }
  }
}

TEST(Measurements, ConstructorsValidate) {
  EXPECT_THROW(make_projective({0}, CMatrix::Ones(2, 2)), std::invalid_argument);
  const auto m = computational_measurement(1, 3);
  EXPECT_EQ(m.subsystems, std::vector<std::size_t>{1});
  EXPECT_LE((m.basis - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 0.0);

  CMatrix e0 = CMatrix::Zero(2, 2), e1 = CMatrix::Zero(2, 2);
  e0(0, 0) = 1.0;
  e1(1, 1) = 0.5;
  EXPECT_THROW(make_povm({0}, {e0, e1}), std::invalid_argument);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 2.0;
  neg(1, 1) = 1.0;
  CMatrix rest = CMatrix::Zero(2, 2);
  rest(0, 0) = -1.0;
  EXPECT_THROW(make_povm({0}, {neg, rest}), std::invalid_argument);
}

TEST(ApplyMeasurement, BellComputational) {
  const QState bell({2, 2}, oracle::projector(oracle::bell_phi_plus()));
  const auto e = apply_measurement(bell, computational_measurement(0, 2));
  ASSERT_EQ(e.probabilities.size(), 2u);
  EXPECT_NEAR(e.probabilities[0], 0.5, 1e-15);
  EXPECT_NEAR(e.probabilities[1], 0.5, 1e-15);
  EXPECT_NEAR(std::abs(e.states[0].matrix()(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(avg_conditional_entropy(e), 0.0, 1e-12);
}

TEST(ApplyMeasurement, WernerExampleConditionalStates) {
  // each outcome leaves B with eigenvalues 2/3 and 1/3
  const auto e = apply_measurement(werner_2qubit_example4(), computational_measurement(0, 2));
  ASSERT_EQ(e.states.size(), 2u);
  for (const auto& s : e.states) {
    const auto ev = spectrum(s).eigenvalues;
    EXPECT_NEAR(ev(0), 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(ev(1), 1.0 / 3.0, 1e-12);
  }
  EXPECT_NEAR(avg_conditional_entropy(e), oracle::h2(1.0 / 3.0), 1e-12);
}

TEST(ApplyMeasurement, DropsImpossibleOutcomes) {
  CMatrix zero = CMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  const auto rho = tensor(QState({2}, zero), random_mixed({2}, 0, 3));
  const auto e = apply_measurement(rho, computational_measurement(0, 2));
  ASSERT_EQ(e.outcomes.size(), 1u);
  EXPECT_EQ(e.outcomes[0], 0u);
  EXPECT_NEAR(e.probabilities[0], 1.0, 1e-15);
}

TEST(ApplyMeasurement, PovmOfProjectorsMatchesProjective) {
  const auto rho = random_mixed({3, 2}, 0, 21);
  const auto m = projective_from_params(0, 3, random_params(3, 5));
  const auto a = apply_measurement(rho, m);
  const auto b = apply_measurement(rho, as_povm(m));
  ASSERT_EQ(a.probabilities.size(), b.probabilities.size());
  for (std::size_t k = 0; k < a.probabilities.size(); ++k) {
    EXPECT_NEAR(a.probabilities[k], b.probabilities[k], 1e-14);
    EXPECT_LE((a.states[k].matrix() - b.states[k].matrix()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ApplyMeasurement, TrinePovmOnMaximallyMixed) {
  std::vector<CMatrix> elems;
  for (int k = 0; k < 3; ++k) {
    const auto v = oracle::bloch_ket(std::numbers::pi / 2, 2 * std::numbers::pi * k / 3);
    elems.push_back(2.0 / 3.0 * oracle::projector(v));
  }
  const auto povm = make_povm({0}, elems);
  const auto e = apply_measurement(QState::maximally_mixed({2, 2}), povm);
  ASSERT_EQ(e.probabilities.size(), 3u);
  for (double p : e.probabilities) EXPECT_NEAR(p, 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(avg_conditional_entropy(e), 1.0, 1e-12);
}

TEST(Dephase, MatchesExplicitProjectorSum) {
  const auto rho = random_mixed({2, 3}, 0, 8);
  const auto m = projective_from_params(1, 3, random_params(3, 9));
  CMatrix expect = CMatrix::Zero(6, 6);
  for (int k = 0; k < 3; ++k) {
    const CMatrix p = kron(CMatrix::Identity(2, 2), oracle::projector(m.basis.col(k)));
    expect += p * rho.matrix() * p;
  }
  EXPECT_LE((dephase(rho, m).matrix() - expect).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(MeasuredStateKernel, AgreesWithEnsembleRoute) {
  const auto rho = random_mixed({2, 3, 2}, 0, 31);
  for (const auto& measured : std::vector<std::vector<std::size_t>> {{1}, {2, 0}}) {
    const MeasuredState ms(rho, measured);
    std::size_t md = 1;
    for (auto k : measured) md *= rho.dims()[k];
    EXPECT_EQ(ms.measured_dim(), md);
    CounterRng rng(4);
    const CMatrix u = haar_unitary(md, rng);
    const ProjectiveMeasurement m{measured, u, {}};
    EXPECT_NEAR(ms.avg_conditional_entropy(u), avg_conditional_entropy(apply_measurement(rho, m)), 1e-10);
    // block route vs full dephasing route
    EXPECT_NEAR(ms.dephased_entropy(u), von_neumann_entropy(dephase(rho, m)), 1e-10);
    CMatrix sum = CMatrix::Zero(ms.rest_dim(), ms.rest_dim());
    for (const auto& b : ms.conditional_blocks(u)) sum += b;
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < 3; ++k)
      if (std::find(measured.begin(), measured.end(), k) == measured.end()) rest.push_back(k);
    EXPECT_LE((sum - partial_trace(rho, rest).matrix()).cwiseAbs().maxCoeff(), 1e-14);
  }
}
