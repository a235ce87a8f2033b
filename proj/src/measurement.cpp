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

#include "qcorr/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcorr {

namespace {

std::vector<std::size_t> measured_first_order(std::size_t n, const std::vector<std::size_t>& measured) {
  std::vector<std::size_t> order = measured;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::find(measured.begin(), measured.end(), k) == measured.end()) order.push_back(k);
  }
  return order;
}

std::vector<std::size_t> inverse_order(const std::vector<std::size_t>& order) {
  std::vector<std::size_t> inv(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) inv[order[i]] = i;
  return inv;
}

void check_measured(const QState& rho, const std::vector<std::size_t>& measured, std::size_t basis_dim) {
  if (measured.empty()) throw std::invalid_argument("measurement acts on no subsystem");
  std::size_t d = 1;
  std::vector<bool> seen(rho.num_subsystems(), false);
  for (auto k : measured) {
    if (k >= rho.num_subsystems()) throw std::invalid_argument("measured subsystem index out of range");
    if (seen[k]) throw std::invalid_argument("measured subsystem listed twice");
    seen[k] = true;
    d *= rho.dims()[k];
  }
  if (measured.size() == rho.num_subsystems()) {
    throw std::invalid_argument("measurement must leave at least one subsystem unmeasured");
  }
  if (d != basis_dim) {
    throw std::invalid_argument("measurement dimension " + std::to_string(basis_dim) +
                                " does not match measured subsystems (" + std::to_string(d) + ")");
  }
}

OutcomeEnsemble ensemble_from_blocks(const std::vector<CMatrix>& blocks, const Dims& rest_dims) {
  OutcomeEnsemble e;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const double p = blocks[k].trace().real();
    if (p < kOutcomeFloor) continue;
    CMatrix s = blocks[k] / p;
    s = 0.5 * (s + s.adjoint());
    e.outcomes.push_back(k);
    e.probabilities.push_back(p);
    e.states.emplace_back(rest_dims, std::move(s), QState::Unchecked{});
  }
  return e;
}

}  // namespace

CMatrix givens_unitary(std::size_t d, std::span<const double> params) {
  const auto pairs = d * (d - 1) / 2;
  if (params.size() != 2 * pairs) {
    throw std::invalid_argument("expected " + std::to_string(2 * pairs) + " measurement parameters for d = " +
                                std::to_string(d) + ", got " + std::to_string(params.size()));
  }
  CMatrix u = CMatrix::Identity(d, d);
  std::size_t p = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j, ++p) {
      const double c = std::cos(params[p]);
      const double s = std::sin(params[p]);
      const Complex phase = std::polar(1.0, params[pairs + p]);
      // u <- u * G_ij touches columns i and j only
      for (std::size_t r = 0; r < d; ++r) {
        const Complex ui = u(r, i);
        const Complex uj = u(r, j);
        u(r, i) = c * ui + phase * s * uj;
        u(r, j) = -std::conj(phase) * s * ui + c * uj;
      }
    }
  }
  return u;
}

ProjectiveMeasurement projective_from_params(std::size_t subsystem, std::size_t d, std::span<const double> params) {
  return ProjectiveMeasurement{{subsystem}, givens_unitary(d, params), std::vector<double>(params.begin(), params.end())};
}

ProjectiveMeasurement computational_measurement(std::size_t subsystem, std::size_t d) {
  return ProjectiveMeasurement{{subsystem}, CMatrix::Identity(d, d), {}};
}

ProjectiveMeasurement make_projective(std::vector<std::size_t> subsystems, CMatrix basis) {
  if (basis.rows() != basis.cols()) throw std::invalid_argument("measurement basis must be square");
  if (unitarity_residual(basis) > kStateTolerance) throw std::invalid_argument("measurement basis is not unitary");
  return ProjectiveMeasurement{std::move(subsystems), std::move(basis), {}};
}

POVM make_povm(std::vector<std::size_t> subsystems, std::vector<CMatrix> elements) {
  if (elements.empty()) throw std::invalid_argument("POVM needs at least one element");
  const auto d = elements.front().rows();
  CMatrix total = CMatrix::Zero(d, d);
  for (const auto& e : elements) {
    if (e.rows() != d || e.cols() != d) throw std::invalid_argument("POVM elements disagree on dimension");
    if (hermiticity_residual(e) > kStateTolerance) throw std::invalid_argument("POVM element is not Hermitian");
    if (hermitian_eigenvalues(0.5 * (e + e.adjoint())).minCoeff() < -kStateTolerance) {
      throw std::invalid_argument("POVM element is not positive semidefinite");
    }
    total += e;
  }
  if ((total - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9) {
    throw std::invalid_argument("POVM elements do not sum to the identity");
  }
  return POVM{std::move(subsystems), std::move(elements)};
}

POVM as_povm(const ProjectiveMeasurement& m) {
  POVM out{m.subsystems, {}};
  for (Eigen::Index k = 0; k < m.basis.cols(); ++k) out.elements.push_back(m.basis.col(k) * m.basis.col(k).adjoint());
  return out;
}

MeasuredState::MeasuredState(const QState& rho, std::vector<std::size_t> measured) : measured_(std::move(measured)) {
  std::size_t d = 1;
  for (auto k : measured_) d *= (k < rho.num_subsystems() ? rho.dims()[k] : 0);
  check_measured(rho, measured_, d);
  const auto order = measured_first_order(rho.num_subsystems(), measured_);
  for (std::size_t i = measured_.size(); i < order.size(); ++i) rest_dims_.push_back(rho.dims()[order[i]]);
  measured_dim_ = d;
  rest_dim_ = product(rest_dims_);
  matrix_ = permute(rho, order).matrix();
}

std::vector<CMatrix> MeasuredState::conditional_blocks(const CMatrix& basis) const {
  if (static_cast<std::size_t>(basis.rows()) != measured_dim_) {
    throw std::invalid_argument("basis dimension does not match measured subsystems");
  }
  const auto d = measured_dim_;
  const auto r = static_cast<Eigen::Index>(rest_dim_);
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(basis.cols()));
  CMatrix row(r, r * static_cast<Eigen::Index>(d));
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    // row_t = sum_s conj(b_s) ρ_{s,t}
    row.setZero();
    for (std::size_t s = 0; s < d; ++s) {
      const Complex w = std::conj(basis(s, k));
      if (w == Complex(0.0, 0.0)) continue;
      row.noalias() += w * matrix_.middleRows(s * r, r);
    }
    CMatrix block = CMatrix::Zero(r, r);
    for (std::size_t t = 0; t < d; ++t) {
      const Complex w = basis(t, k);
      if (w == Complex(0.0, 0.0)) continue;
      block.noalias() += w * row.middleCols(t * r, r);
    }
    out.push_back(std::move(block));
  }
  return out;
}

CMatrix MeasuredState::apply_element(const CMatrix& element) const {
  if (static_cast<std::size_t>(element.rows()) != measured_dim_) {
    throw std::invalid_argument("POVM element dimension does not match measured subsystems");
  }
  const auto r = static_cast<Eigen::Index>(rest_dim_);
  CMatrix out = CMatrix::Zero(r, r);
  for (std::size_t s = 0; s < measured_dim_; ++s) {
    for (std::size_t t = 0; t < measured_dim_; ++t) {
      const Complex w = element(t, s);
      if (w == Complex(0.0, 0.0)) continue;
      out.noalias() += w * matrix_.block(s * r, t * r, r, r);
    }
  }
  return out;
}

double MeasuredState::avg_conditional_entropy(const CMatrix& basis) const {
  double s = 0.0;
  for (const auto& block : conditional_blocks(basis)) {
    const double p = block.trace().real();
    if (p < kOutcomeFloor) continue;
    s += block_entropy_bits(block) + p * std::log2(p);
  }
  return s;
}

double MeasuredState::dephased_entropy(const CMatrix& basis) const {
  double s = 0.0;
  for (const auto& block : conditional_blocks(basis)) s += block_entropy_bits(block);
  return s;
}

OutcomeEnsemble apply_measurement(const QState& rho, const ProjectiveMeasurement& m) {
  check_measured(rho, m.subsystems, static_cast<std::size_t>(m.basis.rows()));
  const MeasuredState ms(rho, m.subsystems);
  return ensemble_from_blocks(ms.conditional_blocks(m.basis), ms.rest_dims());
}

OutcomeEnsemble apply_measurement(const QState& rho, const POVM& m) {
  if (m.elements.empty()) throw std::invalid_argument("POVM has no elements");
  check_measured(rho, m.subsystems, static_cast<std::size_t>(m.elements.front().rows()));
  const MeasuredState ms(rho, m.subsystems);
  std::vector<CMatrix> blocks;
  for (const auto& e : m.elements) blocks.push_back(ms.apply_element(e));
  return ensemble_from_blocks(blocks, ms.rest_dims());
}

double avg_conditional_entropy(const OutcomeEnsemble& e) {
  double s = 0.0;
  for (std::size_t k = 0; k < e.states.size(); ++k) s += e.probabilities[k] * von_neumann_entropy(e.states[k]);
  return s;
}

QState dephase(const QState& rho, const ProjectiveMeasurement& m) {
  check_measured(rho, m.subsystems, static_cast<std::size_t>(m.basis.rows()));
  const auto order = measured_first_order(rho.num_subsystems(), m.subsystems);
  const QState front = permute(rho, order);
  const auto rest = front.dim() / static_cast<std::size_t>(m.basis.rows());
  const CMatrix id = CMatrix::Identity(rest, rest);
  CMatrix out = CMatrix::Zero(front.dim(), front.dim());
  for (Eigen::Index k = 0; k < m.basis.cols(); ++k) {
    const CMatrix proj = kron(CMatrix(m.basis.col(k) * m.basis.col(k).adjoint()), id);
    out += proj * front.matrix() * proj;
  }
  return permute(QState(front.dims(), std::move(out), QState::Unchecked{}), inverse_order(order));
}

}  // namespace qcorr
