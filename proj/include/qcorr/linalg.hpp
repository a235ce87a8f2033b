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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qcorr {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Eigenvalues of a negative value above this floor are treated as zero.
inline constexpr double kEigenvalueFloor = 1e-10;

/// Kronecker product a ⊗ b.
CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

/// Eigenvalues of a Hermitian matrix in descending order. Only the lower
/// triangle is read; 1x1 and 2x2 inputs use closed forms.
RVector hermitian_eigenvalues(const CMatrix& m);

/// -sum λ log2 λ over the given values with negatives treated as zero.
/// The values are not renormalized, so unnormalized blocks can be summed.
double shannon_bits(std::span<const double> values);
double shannon_bits(const RVector& values);

/// Von Neumann entropy (bits) of an unnormalized PSD block, -Tr(σ log2 σ).
double block_entropy_bits(const CMatrix& block);

/// Binary entropy h(p) in bits.
double binary_entropy(double p);

/// Max-norm of (m - m†).
double hermiticity_residual(const CMatrix& m);

/// Max-norm of (u† u - I).
double unitarity_residual(const CMatrix& u);

std::size_t product(std::span<const std::size_t> dims);

}  // namespace qcorr
