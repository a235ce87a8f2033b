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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qcorr/qstate.hpp"

namespace qcorr {

/// Outcomes with probability below this are dropped from ensembles.
inline constexpr double kOutcomeFloor = 1e-12;

/// Rank-1 complete projective measurement. `basis` acts on the tensor product
/// of `subsystems` (in the listed order); its columns are the measurement
/// vectors.
struct ProjectiveMeasurement {
  std::vector<std::size_t> subsystems;
  CMatrix basis;
  std::vector<double> params;  ///< generating parameters, empty if none
};

struct POVM {
  std::vector<std::size_t> subsystems;
  std::vector<CMatrix> elements;
};

/// Post-measurement ensemble on the unmeasured subsystems.
struct OutcomeEnsemble {
  std::vector<std::size_t> outcomes;  ///< surviving outcome labels
  std::vector<double> probabilities;
  std::vector<QState> states;
};

/// d(d-1)/2 rotation angles followed by d(d-1)/2 phases.
constexpr std::size_t measurement_param_count(std::size_t d) { return d * d - d; }

/// Ordered product of two-level rotations G_ij(θ, φ) over pairs (i, j) in
/// lexicographic order. G_ij has cos θ on (i,i) and (j,j), -e^{-iφ} sin θ on
/// (i,j) and e^{iφ} sin θ on (j,i). Throws on a wrong parameter count.
CMatrix givens_unitary(std::size_t d, std::span<const double> params);

ProjectiveMeasurement projective_from_params(std::size_t subsystem, std::size_t d, std::span<const double> params);

ProjectiveMeasurement computational_measurement(std::size_t subsystem, std::size_t d);

/// Checks unitarity of the basis (residual ≤ 1e-10).
ProjectiveMeasurement make_projective(std::vector<std::size_t> subsystems, CMatrix basis);

/// Checks each element is PSD and that the elements sum to the identity.
POVM make_povm(std::vector<std::size_t> subsystems, std::vector<CMatrix> elements);

/// Projectors |b_k><b_k| of a projective measurement, as a POVM.
POVM as_povm(const ProjectiveMeasurement& m);

OutcomeEnsemble apply_measurement(const QState& rho, const ProjectiveMeasurement& m);
OutcomeEnsemble apply_measurement(const QState& rho, const POVM& m);

/// sum_k p_k S(ρ_k) in bits.
double avg_conditional_entropy(const OutcomeEnsemble& e);

/// sum_k (Π_k ⊗ I) ρ (Π_k ⊗ I), built from full-size embedded projectors.
QState dephase(const QState& rho, const ProjectiveMeasurement& m);

/// Evaluation kernel for repeated measurements of the same subsystems: the
/// state is stored with the measured subsystems moved to the front so each
/// outcome block is a weighted sum of sub-blocks.
class MeasuredState {
 public:
  MeasuredState(const QState& rho, std::vector<std::size_t> measured);

  std::size_t measured_dim() const { return measured_dim_; }
  std::size_t rest_dim() const { return rest_dim_; }
  const Dims& rest_dims() const { return rest_dims_; }
  const std::vector<std::size_t>& measured() const { return measured_; }

  /// Unnormalized conditional states <b_k| ρ |b_k> for every column b_k.
  std::vector<CMatrix> conditional_blocks(const CMatrix& basis) const;

  /// Unnormalized Tr_measured((E ⊗ I) ρ).
  CMatrix apply_element(const CMatrix& element) const;

  /// sum_k p_k S(ρ_k).
  double avg_conditional_entropy(const CMatrix& basis) const;

  /// S of the dephased state: H(p) + sum_k p_k S(ρ_k).
  double dephased_entropy(const CMatrix& basis) const;

 private:
  std::vector<std::size_t> measured_;
  Dims rest_dims_;
  std::size_t measured_dim_ = 0;
  std::size_t rest_dim_ = 0;
  CMatrix matrix_;  // measured subsystems first
};

}  // namespace qcorr
