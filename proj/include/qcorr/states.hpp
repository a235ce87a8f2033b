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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/qstate.hpp"
#include "qcorr/rng.hpp"

namespace qcorr {

enum class Family { werner_qudit, werner_2qubit, example3, classical_quantum, haar_pure, random_mixed };

std::string_view to_string(Family f);
/// Throws std::invalid_argument for an unknown tag.
Family family_from_string(std::string_view tag);

/// Everything needed to regenerate a sampled state.
///   werner_qudit:      d, x
///   werner_2qubit:     none (the fixed two-qubit Werner state with x = 0)
///   example3:          none
///   classical_quantum: dims = (classical dim, quantum dim); weights (empty:
///                      drawn uniformly from the simplex); rank of each
///                      conditional state (0: full)
///   haar_pure:         dims
///   random_mixed:      dims, rank (0: full)
struct StateFamilySpec {
  Family family = Family::random_mixed;
  Dims dims = {2, 2};
  std::size_t d = 2;
  double x = 0.0;
  std::size_t rank = 0;
  std::vector<double> weights;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument when a parameter is out of range.
  void check() const;
};

/// Seed used for sample `index` of a family run with base seed `seed`.
std::uint64_t sample_seed(std::uint64_t seed, std::size_t index);

/// Sample `index` of the family, seeded with sample_seed(spec.seed, index).
QState generate(const StateFamilySpec& spec, std::size_t index);

/// Werner state on C^d ⊗ C^d with flip expectation Tr(ρF) = x:
/// ρ = [(d - x) I + (d x - 1) F] / (d³ - d).
QState werner_qudit(std::size_t d, double x);

/// I/6 + |ψ⁻><ψ⁻|/3, the two-qubit Werner state that beats D ≤ J.
QState werner_2qubit_example4();

/// The (4, 2) state ½(Φ⁺ on (a₁, B)) ⊗ I/2 on a₂, written as an 8x8 matrix.
QState example3_state();

/// sum_k p_k |k><k| ⊗ σ_k with |k> computational. Throws when the lengths
/// differ, the weights are off the simplex by more than 1e-9, or the σ_k
/// disagree on dims.
QState classical_quantum(std::span<const double> probs, const std::vector<QState>& states);

PureStateVector haar_random_pure(const Dims& dims, std::uint64_t seed);

/// Induced-measure state G G† / Tr(G G†), G a (prod dims) x rank Ginibre
/// matrix. Rank 0 means full rank.
QState random_mixed(const Dims& dims, std::size_t rank, std::uint64_t seed);

/// Haar unitary from the QR decomposition of a Ginibre matrix.
CMatrix haar_unitary(std::size_t n, CounterRng& rng);

/// Swap operator F|ij> = |ji> on C^d ⊗ C^d.
CMatrix flip_operator(std::size_t d);

}  // namespace qcorr
