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

#include "qcorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace qcorr {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

RVector hermitian_eigenvalues(const CMatrix& m) {
  const auto n = m.rows();
  RVector out(n);
  if (n == 1) {
    out(0) = m(0, 0).real();
    return out;
  }
  if (n == 2) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double half_gap = 0.5 * (a - d);
    const double r = std::sqrt(half_gap * half_gap + std::norm(m(1, 0)));
    const double mid = 0.5 * (a + d);
    out(0) = mid + r;
    out(1) = mid - r;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  out = solver.eigenvalues().reverse();
  return out;
}

double shannon_bits(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) {
    if (v > 0.0) s -= v * std::log2(v);
  }
  return s;
}

double shannon_bits(const RVector& values) {
  return shannon_bits(std::span<const double>(values.data(), static_cast<std::size_t>(values.size())));
}

double block_entropy_bits(const CMatrix& block) {
  return shannon_bits(hermitian_eigenvalues(block));
}

double binary_entropy(double p) {
  const double q = 1.0 - p;
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (q > 0.0) h -= q * std::log2(q);
  return h;
}

double hermiticity_residual(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_residual(const CMatrix& u) {
  const CMatrix g = u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols());
  return g.size() == 0 ? 0.0 : g.cwiseAbs().maxCoeff();
}

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

}  // namespace qcorr
