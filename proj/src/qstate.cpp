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

#include "qcorr/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qcorr {

namespace {

std::size_t checked_product(const Dims& dims) {
  if (dims.empty()) throw std::invalid_argument("dims must be nonempty");
  for (auto d : dims) {
    if (d == 0) throw std::invalid_argument("subsystem dimension must be positive");
  }
  return product(dims);
}

void check_subsystem_list(const Dims& dims, const std::vector<std::size_t>& list, const char* what) {
  std::vector<bool> seen(dims.size(), false);
  for (auto k : list) {
    if (k >= dims.size()) {
      throw std::invalid_argument(std::string(what) + ": subsystem index " + std::to_string(k) +
                                  " out of range for " + std::to_string(dims.size()) + " subsystems");
    }
    if (seen[k]) throw std::invalid_argument(std::string(what) + ": duplicate subsystem index");
    seen[k] = true;
  }
}

// Maps each flat index to the digit tuple restricted to `subset`, flattened.
std::vector<std::size_t> sub_index(const Dims& dims, const std::vector<std::size_t>& subset) {
  const auto total = product(dims);
  const auto st = strides(dims);
  std::vector<std::size_t> out(total);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t idx = 0;
    for (auto k : subset) idx = idx * dims[k] + (i / st[k]) % dims[k];
    out[i] = idx;
  }
  return out;
}

// Flat old index for every flat new index under the subsystem reordering.
std::vector<std::size_t> permutation_map(const Dims& dims, const std::vector<std::size_t>& order) {
  Dims new_dims;
  for (auto k : order) new_dims.push_back(dims[k]);
  const auto total = product(dims);
  const auto old_st = strides(dims);
  const auto new_st = strides(new_dims);
  std::vector<std::size_t> map(total);
  for (std::size_t n = 0; n < total; ++n) {
    std::size_t old = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      old += ((n / new_st[i]) % new_dims[i]) * old_st[order[i]];
    }
    map[n] = old;
  }
  return map;
}

}  // namespace

std::string Diagnostics::describe() const {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific;
  os << "hermiticity residual " << hermiticity << (hermitian() ? "" : " (violated)") << ", trace error "
     << trace_error << (unit_trace() ? "" : " (violated)") << ", min eigenvalue " << min_eigenvalue
     << (positive() ? "" : " (PSD violated)");
  return os.str();
}

std::vector<std::size_t> strides(const Dims& dims) {
  std::vector<std::size_t> st(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) st[k - 1] = st[k] * dims[k];
  return st;
}

Diagnostics validate(const Dims& dims, const CMatrix& matrix) {
  const auto total = checked_product(dims);
  if (matrix.rows() != matrix.cols() || static_cast<std::size_t>(matrix.rows()) != total) {
    throw std::invalid_argument("matrix side " + std::to_string(matrix.rows()) + "x" +
                                std::to_string(matrix.cols()) + " does not match product of dims " +
                                std::to_string(total));
  }
  Diagnostics d;
  d.hermiticity = hermiticity_residual(matrix);
  d.trace_error = std::abs(matrix.trace() - Complex(1.0, 0.0));
  const CMatrix herm = 0.5 * (matrix + matrix.adjoint());
  d.min_eigenvalue = hermitian_eigenvalues(herm).minCoeff();
  return d;
}

QState::QState(Dims dims, CMatrix matrix) : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  const auto diag = validate(dims_, matrix_);
  if (!diag.ok()) throw std::invalid_argument("invalid density matrix: " + diag.describe());
}

QState QState::maximally_mixed(Dims dims) {
  const auto n = checked_product(dims);
  return QState(std::move(dims), CMatrix::Identity(n, n) / static_cast<double>(n), Unchecked{});
}

PureStateVector::PureStateVector(Dims dims, CVector amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  const auto total = checked_product(dims_);
  if (static_cast<std::size_t>(amplitudes_.size()) != total) {
    throw std::invalid_argument("amplitude count does not match product of dims");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > kStateTolerance) {
    throw std::invalid_argument("state vector is not normalized");
  }
}

QState PureStateVector::to_density() const {
  return QState(dims_, amplitudes_ * amplitudes_.adjoint(), QState::Unchecked{});
}

QState tensor(const QState& a, const QState& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return QState(std::move(dims), kron(a.matrix(), b.matrix()), QState::Unchecked{});
}

QState partial_trace(const QState& rho, const std::vector<std::size_t>& keep) {
  const auto& dims = rho.dims();
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  check_subsystem_list(dims, keep, "partial_trace");

  std::vector<std::size_t> kept = keep;
  std::sort(kept.begin(), kept.end());
  std::vector<std::size_t> traced;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (!std::binary_search(kept.begin(), kept.end(), k)) traced.push_back(k);
  }
  Dims kept_dims;
  for (auto k : kept) kept_dims.push_back(dims[k]);
  const auto n_keep = product(kept_dims);
  const auto n_total = rho.dim();
  const auto n_traced = n_total / n_keep;

  const auto keep_idx = sub_index(dims, kept);
  const auto trace_idx = sub_index(dims, traced);
  // full[a * n_traced + t] = flat index with kept digits a and traced digits t
  std::vector<std::size_t> full(n_total);
  for (std::size_t i = 0; i < n_total; ++i) full[keep_idx[i] * n_traced + trace_idx[i]] = i;

  const auto& m = rho.matrix();
  CMatrix out = CMatrix::Zero(n_keep, n_keep);
  for (std::size_t a = 0; a < n_keep; ++a) {
    for (std::size_t b = 0; b < n_keep; ++b) {
      Complex acc{0.0, 0.0};
      for (std::size_t t = 0; t < n_traced; ++t) acc += m(full[a * n_traced + t], full[b * n_traced + t]);
      out(a, b) = acc;
    }
  }
  return QState(std::move(kept_dims), std::move(out), QState::Unchecked{});
}

QState permute(const QState& rho, const std::vector<std::size_t>& order) {
  const auto& dims = rho.dims();
  if (order.size() != dims.size()) throw std::invalid_argument("permute: order must list every subsystem");
  check_subsystem_list(dims, order, "permute");
  const auto map = permutation_map(dims, order);
  const auto n = map.size();
  CMatrix out(n, n);
  const auto& m = rho.matrix();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) out(x, y) = m(map[x], map[y]);
  }
  Dims new_dims;
  for (auto k : order) new_dims.push_back(dims[k]);
  return QState(std::move(new_dims), std::move(out), QState::Unchecked{});
}

PureStateVector permute(const PureStateVector& psi, const std::vector<std::size_t>& order) {
  const auto& dims = psi.dims();
  if (order.size() != dims.size()) throw std::invalid_argument("permute: order must list every subsystem");
  check_subsystem_list(dims, order, "permute");
  const auto map = permutation_map(dims, order);
  CVector out(map.size());
  for (std::size_t x = 0; x < map.size(); ++x) out(x) = psi.amplitudes()(map[x]);
  Dims new_dims;
  for (auto k : order) new_dims.push_back(dims[k]);
  return PureStateVector(std::move(new_dims), std::move(out));
}

Spectrum spectrum(const QState& rho) {
  const CMatrix herm = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm);
  Spectrum s;
  s.eigenvalues = solver.eigenvalues().reverse();
  s.eigenvectors = solver.eigenvectors().rowwise().reverse();
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    if (s.eigenvalues(i) < 0.0) s.eigenvalues(i) = 0.0;
  }
  const double total = s.eigenvalues.sum();
  if (total > 0.0) s.eigenvalues /= total;
  return s;
}

double von_neumann_entropy(const QState& rho) {
  const CMatrix herm = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  RVector ev = hermitian_eigenvalues(herm);
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::max(ev(i), 0.0);
  const double total = ev.sum();
  if (total > 0.0) ev /= total;
  return shannon_bits(ev);
}

double entropy_of(const QState& rho, const std::vector<std::size_t>& subsystems) {
  if (subsystems.size() == rho.num_subsystems()) {
    check_subsystem_list(rho.dims(), subsystems, "entropy_of");
    return von_neumann_entropy(rho);
  }
  return von_neumann_entropy(partial_trace(rho, subsystems));
}

double conditional_entropy(const QState& rho, std::size_t target, std::size_t condition) {
  if (target == condition) throw std::invalid_argument("conditional_entropy: target equals condition");
  if (target >= rho.num_subsystems() || condition >= rho.num_subsystems()) {
    throw std::invalid_argument("conditional_entropy: subsystem index out of range");
  }
  return entropy_of(rho, {target, condition}) - entropy_of(rho, {condition});
}

double purity(const QState& rho) {
  // Tr(ρ²) = sum |ρ_ij|² for Hermitian ρ
  return rho.matrix().cwiseAbs2().sum();
}

std::size_t numerical_rank(const QState& rho) {
  const auto s = spectrum(rho);
  return static_cast<std::size_t>((s.eigenvalues.array() > kEigenvalueFloor).count());
}

PureStateVector purify(const QState& rho) {
  const auto s = spectrum(rho);
  std::size_t rank = 0;
  while (rank < static_cast<std::size_t>(s.eigenvalues.size()) && s.eigenvalues(rank) > kEigenvalueFloor) ++rank;
  if (rank == 0) throw std::invalid_argument("purify: state has no eigenvalue above the floor");

  RVector kept = s.eigenvalues.head(rank);
  kept /= kept.sum();

  const auto n = rho.dim();
  CVector psi = CVector::Zero(n * rank);
  for (std::size_t i = 0; i < rank; ++i) {
    CVector e = s.eigenvectors.col(i);
    // first non-negligible component real-positive
    for (Eigen::Index k = 0; k < e.size(); ++k) {
      if (std::abs(e(k)) > 1e-12) {
        e *= std::conj(e(k)) / std::abs(e(k));
        break;
      }
    }
    const double w = std::sqrt(kept(i));
    for (std::size_t a = 0; a < n; ++a) psi(a * rank + i) = w * e(a);
  }
  psi.normalize();
  Dims dims = rho.dims();
  dims.push_back(rank);
  return PureStateVector(std::move(dims), std::move(psi));
}

}  // namespace qcorr
