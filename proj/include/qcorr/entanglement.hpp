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

// Entanglement of formation across a bipartition.
//
// A bipartition is given by the subsystems on the first side; every other
// subsystem is on the second side.

#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "qcorr/optimize.hpp"
#include "qcorr/qstate.hpp"

namespace qcorr {

enum class Exactness { exact_pure, exact_wootters, upper_bound };

std::string_view to_string(Exactness e);

/// ρ = sum_i p_i |ψ_i><ψ_i| with |ψ̃_i> = sum_j W_ij sqrt(λ_j) |e_j>,
/// W an m x rank isometry.
struct EnsembleDecomposition {
  std::vector<double> weights;
  std::vector<CVector> vectors;  ///< normalized; zero where the weight vanishes
  CMatrix isometry;
};

struct EofResult {
  double value = 0.0;  ///< bits
  Exactness tag = Exactness::exact_pure;
  std::optional<EnsembleDecomposition> witness;  ///< upper_bound only
  std::optional<double> wootters_gap;            ///< upper bound minus exact, (2,2) only
  std::vector<double> restart_values;
  bool converged = true;
};

/// Concurrences at or below this are reported as exactly zero.
inline constexpr double kConcurrenceFloor = 1e-12;

EofResult eof_pure(const PureStateVector& psi, const std::vector<std::size_t>& side);
/// Throws std::invalid_argument when purity < 1 - 1e-9.
EofResult eof_pure(const QState& rho, const std::vector<std::size_t>& side);

/// Wootters concurrence; throws unless dims are (2, 2).
double concurrence_2qubit(const QState& rho);

/// h((1 + sqrt(1 - C²)) / 2) for a concurrence C.
double eof_from_concurrence(double c);

EofResult eof_2qubit(const QState& rho);

/// Convex-roof upper bound over ensembles of rank² pure states obtained from
/// the canonical decomposition by an isometry, minimized by Riemannian
/// conjugate gradient on the isometry manifold with cfg.restarts starts.
EofResult eof_upper(const QState& rho, const std::vector<std::size_t>& side, const OptimizerConfig& cfg);

/// Exact value where available (pure, or two qubits once trivial sides are
/// embedded into a qubit); upper bound otherwise.
EofResult entanglement_of_formation(const QState& rho, const std::vector<std::size_t>& side,
                                    const OptimizerConfig& cfg);

/// True when entanglement_of_formation would take an exact path.
bool eof_is_exact(const QState& rho, const std::vector<std::size_t>& side);

}  // namespace qcorr
