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

// Density-matrix algebra over a tensor product of finite subsystems.
//
// Basis ordering is row-major over the tensor-product basis with subsystem 0
// slowest, so the flat index of |i_0 i_1 ... i_{n-1}> is
// ((i_0 * d_1 + i_1) * d_2 + ...) + i_{n-1}.
//
// Entropies are in bits throughout.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qcorr/linalg.hpp"

namespace qcorr {

using Dims = std::vector<std::size_t>;

inline constexpr double kStateTolerance = 1e-10;

/// Residuals of the density-matrix conditions for a candidate matrix.
struct Diagnostics {
  double hermiticity = 0.0;   ///< max |M - M†|
  double trace_error = 0.0;   ///< |Tr M - 1|
  double min_eigenvalue = 0.0;

  bool hermitian() const { return hermiticity <= kStateTolerance; }
  bool unit_trace() const { return trace_error <= kStateTolerance; }
  bool positive() const { return min_eigenvalue >= -kStateTolerance; }
  bool ok() const { return hermitian() && unit_trace() && positive(); }
  std::string describe() const;
};

/// Reports residuals; throws std::invalid_argument when prod(dims) does not
/// match the matrix side or a dimension is zero.
Diagnostics validate(const Dims& dims, const CMatrix& matrix);

/// Descending eigenvalues (negatives within the floor clipped, then
/// renormalized) and matching eigenvector columns.
struct Spectrum {
  RVector eigenvalues;
  CMatrix eigenvectors;
};

class QState {
 public:
  struct Unchecked {};

  /// Validates and throws std::invalid_argument on any violated condition.
  QState(Dims dims, CMatrix matrix);
  /// For matrices derived from an already valid state (partial traces,
  /// conditional states). No checks.
  QState(Dims dims, CMatrix matrix, Unchecked) : dims_(std::move(dims)), matrix_(std::move(matrix)) {}

  static QState maximally_mixed(Dims dims);

  const Dims& dims() const { return dims_; }
  const CMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t num_subsystems() const { return dims_.size(); }

 private:
  Dims dims_;
  CMatrix matrix_;
};

class PureStateVector {
 public:
  /// Throws std::invalid_argument when the norm deviates from 1 by more than
  /// 1e-10 or the length does not match prod(dims).
  PureStateVector(Dims dims, CVector amplitudes);

  const Dims& dims() const { return dims_; }
  const CVector& amplitudes() const { return amplitudes_; }
  QState to_density() const;

 private:
  Dims dims_;
  CVector amplitudes_;
};

QState tensor(const QState& a, const QState& b);

/// Keeps the listed subsystems (any order, duplicates rejected); the result
/// lists them in their original order.
QState partial_trace(const QState& rho, const std::vector<std::size_t>& keep);

/// Reorders subsystems so that new subsystem i is old subsystem order[i].
QState permute(const QState& rho, const std::vector<std::size_t>& order);
PureStateVector permute(const PureStateVector& psi, const std::vector<std::size_t>& order);

Spectrum spectrum(const QState& rho);
double von_neumann_entropy(const QState& rho);
/// Entropy of the marginal on the listed subsystems.
double entropy_of(const QState& rho, const std::vector<std::size_t>& subsystems);

/// S(target, condition) - S(condition) on the two-subsystem marginal.
double conditional_entropy(const QState& rho, std::size_t target, std::size_t condition);

double purity(const QState& rho);

/// Number of eigenvalues above the clipping floor.
std::size_t numerical_rank(const QState& rho);

/// Canonical purification sum_i sqrt(λ_i) |e_i>|i> on dims + (rank).
PureStateVector purify(const QState& rho);

/// Flat-index helper: digit of subsystem k in flat index i.
std::vector<std::size_t> strides(const Dims& dims);

}  // namespace qcorr
