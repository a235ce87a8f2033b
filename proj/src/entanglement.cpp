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

#include "qcorr/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qcorr/states.hpp"

namespace qcorr {

namespace {

constexpr double kPurityTolerance = 1e-9;

struct Bipartite {
  QState state;  // side subsystems first
  std::size_t d1 = 0;
  std::size_t d2 = 0;
};

Bipartite split_sides(const QState& rho, const std::vector<std::size_t>& side) {
  if (side.empty()) throw std::invalid_argument("bipartition side is empty");
  std::vector<std::size_t> order = side;
  for (std::size_t k = 0; k < rho.num_subsystems(); ++k) {
    if (std::find(side.begin(), side.end(), k) == side.end()) order.push_back(k);
  }
  if (order.size() == side.size()) throw std::invalid_argument("bipartition second side is empty");
  QState front = permute(rho, order);
  std::size_t d1 = 1;
  for (std::size_t i = 0; i < side.size(); ++i) d1 *= front.dims()[i];
  const auto d2 = front.dim() / d1;
  return Bipartite{std::move(front), d1, d2};
}

// Entropy (bits) of the first side of a vector of length d1 * d2.
double entanglement_entropy(const CVector& psi, std::size_t d1, std::size_t d2) {
  const Eigen::Map<const CMatrix> n(psi.data(), static_cast<Eigen::Index>(d2), static_cast<Eigen::Index>(d1));
  const CMatrix sigma = d2 <= d1 ? CMatrix(n * n.adjoint()) : CMatrix(n.adjoint() * n);
  RVector ev = hermitian_eigenvalues(sigma);
  for (Eigen::Index i = 0; i < ev.size(); ++i) ev(i) = std::max(ev(i), 0.0);
  const double total = ev.sum();
  if (total > 0.0) ev /= total;
  return shannon_bits(ev);
}

std::optional<QState> as_two_qubit(const Bipartite& b) {
  if (b.d1 > 2 || b.d2 > 2) return std::nullopt;
  CMatrix m = CMatrix::Zero(4, 4);
  for (std::size_t a = 0; a < b.d1; ++a) {
    for (std::size_t x = 0; x < b.d2; ++x) {
      for (std::size_t c = 0; c < b.d1; ++c) {
        for (std::size_t y = 0; y < b.d2; ++y) m(2 * a + x, 2 * c + y) = b.state.matrix()(a * b.d2 + x, c * b.d2 + y);
      }
    }
  }
  return QState({2, 2}, std::move(m), QState::Unchecked{});
}

double re_inner(const CMatrix& a, const CMatrix& b) { return (a.conjugate().cwiseProduct(b)).sum().real(); }

// Convex-roof objective f(W) = sum_i p_i S(Tr_2 |ψ_i><ψ_i|) over isometries W
// (m x r), with |ψ̃_i> = sum_j W_ij v_j and v_j = sqrt(λ_j) e_j.
class RoofObjective {
 public:
  RoofObjective(CMatrix v, std::size_t d1, std::size_t d2) : v_(std::move(v)), d1_(d1), d2_(d2) {}

  double value(const CMatrix& w) const { return evaluate(w, nullptr); }
  double value_and_gradient(const CMatrix& w, CMatrix& grad) const { return evaluate(w, &grad); }

  CMatrix vectors(const CMatrix& w) const { return v_ * w.transpose(); }

 private:
  double evaluate(const CMatrix& w, CMatrix* grad) const {
    const CMatrix psi = v_ * w.transpose();
    const auto m = psi.cols();
    CMatrix gpsi;
    if (grad) gpsi = CMatrix::Zero(psi.rows(), m);
    double f = 0.0;
    const auto r1 = static_cast<Eigen::Index>(d1_);
    const auto r2 = static_cast<Eigen::Index>(d2_);
    for (Eigen::Index i = 0; i < m; ++i) {
      const Eigen::Map<const CMatrix> nt(psi.col(i).data(), r2, r1);  // Mᵀ
      const CMatrix mat = nt.transpose();                                // M(a, b) = ψ(a d2 + b)
      const double p = mat.squaredNorm();
      if (p < 1e-300) continue;
      const bool left = d1_ <= d2_;
      const CMatrix sigma = left ? CMatrix(mat * mat.adjoint()) : CMatrix(mat.adjoint() * mat);
      Eigen::SelfAdjointEigenSolver<CMatrix> es(sigma);
      const RVector& mu = es.eigenvalues();
      double fi = p * std::log(p);
      RVector k(mu.size());
      for (Eigen::Index j = 0; j < mu.size(); ++j) {
        const double mj = std::max(mu(j), 0.0);
        if (mj > 0.0) fi -= mj * std::log(mj);
        k(j) = std::log(p) - std::log(std::max(mj, 1e-300));
      }
      f += fi;
      if (grad) {
        const CMatrix kmat = es.eigenvectors() * k.asDiagonal() * es.eigenvectors().adjoint();
        const CMatrix gm = left ? CMatrix(2.0 * kmat * mat) : CMatrix(2.0 * mat * kmat);
        for (Eigen::Index a = 0; a < r1; ++a) {
          for (Eigen::Index b = 0; b < r2; ++b) gpsi(a * r2 + b, i) = gm(a, b);
        }
      }
    }
    constexpr double inv_ln2 = 1.0 / std::numbers::ln2;
    if (grad) *grad = (v_.adjoint() * gpsi).transpose() * inv_ln2;
    return f * inv_ln2;
  }

  CMatrix v_;
  std::size_t d1_;
  std::size_t d2_;
};

CMatrix project_tangent(const CMatrix& w, const CMatrix& g) {
  const CMatrix a = w.adjoint() * g;
  return g - w * (0.5 * (a + a.adjoint()));
}

CMatrix polar_retract(const CMatrix& x) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(x.adjoint() * x);
  RVector inv_sqrt = es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  return x * (es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint());
}

struct CgResult {
  CMatrix w;
  double value = 0.0;
  bool converged = false;
};

CgResult conjugate_gradient(const RoofObjective& obj, CMatrix w, double tol, std::size_t max_iter) {
  CMatrix g;
  double f = obj.value_and_gradient(w, g);
  CMatrix xi = project_tangent(w, g);
  CMatrix dir = -xi;
  double step = 0.5;
  std::size_t stalls = 0;
  CgResult out{w, f, false};
  for (std::size_t it = 0; it < max_iter; ++it) {
    const double xi2 = re_inner(xi, xi);
    if (xi2 < 1e-20 || f <= 1e-15) {
      out.converged = true;
      break;
    }
    double slope = re_inner(xi, dir);
    if (slope >= 0.0) {
      dir = -xi;
      slope = -xi2;
    }
    double t = std::min(2.0 * step, 10.0);
    CMatrix w_new;
    double f_new = f;
    bool accepted = false;
    while (t > 1e-14) {
      w_new = polar_retract(w + t * dir);
      f_new = obj.value(w_new);
      if (f_new <= f + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      out.converged = true;
      break;
    }
    CMatrix g_new;
    obj.value_and_gradient(w_new, g_new);
    const CMatrix xi_new = project_tangent(w_new, g_new);
    const CMatrix xi_moved = project_tangent(w_new, xi);
    const double beta = std::max(0.0, re_inner(xi_new, xi_new - xi_moved) / xi2);
    dir = -xi_new + beta * project_tangent(w_new, dir);

    const double decrease = f - f_new;
    w = std::move(w_new);
    f = f_new;
    xi = xi_new;
    step = t;
    stalls = decrease < tol ? stalls + 1 : 0;
    if (stalls >= 5) {
      out.converged = true;
      break;
    }
  }
  out.w = std::move(w);
  out.value = f;
  return out;
}

}  // namespace

std::string_view to_string(Exactness e) {
  switch (e) {
    case Exactness::exact_pure:
      return "exact_pure";
    case Exactness::exact_wootters:
      return "exact_wootters";
    case Exactness::upper_bound:
      return "upper_bound";
  }
  return "unknown";
}

EofResult eof_pure(const PureStateVector& psi, const std::vector<std::size_t>& side) {
  const auto b = split_sides(psi.to_density(), side);
  std::vector<std::size_t> order = side;
  for (std::size_t k = 0; k < psi.dims().size(); ++k) {
    if (std::find(side.begin(), side.end(), k) == side.end()) order.push_back(k);
  }
  const auto front = permute(psi, order);
  EofResult out;
  out.value = entanglement_entropy(front.amplitudes(), b.d1, b.d2);
  out.tag = Exactness::exact_pure;
  return out;
}

EofResult eof_pure(const QState& rho, const std::vector<std::size_t>& side) {
  if (purity(rho) < 1.0 - kPurityTolerance) throw std::invalid_argument("eof_pure: state is not pure");
  const auto s = spectrum(rho);
  CVector top = s.eigenvectors.col(0);
  top.normalize();
  return eof_pure(PureStateVector(rho.dims(), std::move(top)), side);
}

double concurrence_2qubit(const QState& rho) {
  if (rho.dims() != Dims{2, 2}) throw std::invalid_argument("concurrence_2qubit needs dims (2, 2)");
  CMatrix yy = CMatrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const CMatrix tilde = yy * rho.matrix().conjugate() * yy;
  const auto s = spectrum(rho);
  const CMatrix root = s.eigenvectors * s.eigenvalues.cwiseSqrt().asDiagonal() * s.eigenvectors.adjoint();
  CMatrix h = root * tilde * root;
  h = 0.5 * (h + h.adjoint());
  RVector l = hermitian_eigenvalues(h);
  for (Eigen::Index i = 0; i < l.size(); ++i) l(i) = std::sqrt(std::max(l(i), 0.0));
  std::sort(l.data(), l.data() + l.size(), std::greater<>());
  const double c = l(0) - l(1) - l(2) - l(3);
  return c <= kConcurrenceFloor ? 0.0 : std::min(c, 1.0);
}

double eof_from_concurrence(double c) {
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

EofResult eof_2qubit(const QState& rho) {
  EofResult out;
  out.value = eof_from_concurrence(concurrence_2qubit(rho));
  out.tag = Exactness::exact_wootters;
  return out;
}

EofResult eof_upper(const QState& rho, const std::vector<std::size_t>& side, const OptimizerConfig& cfg) {
  cfg.check();
  const auto b = split_sides(rho, side);
  const auto s = spectrum(b.state);
  std::size_t rank = 0;
  while (rank < static_cast<std::size_t>(s.eigenvalues.size()) && s.eigenvalues(rank) > kEigenvalueFloor) ++rank;
  if (rank <= 1) return eof_pure(rho, side);

  RVector lambda = s.eigenvalues.head(rank);
  lambda /= lambda.sum();
  const CMatrix v = s.eigenvectors.leftCols(rank) * lambda.cwiseSqrt().asDiagonal();
  const RoofObjective obj(v, b.d1, b.d2);
  const auto m = rank * rank;

  EofResult out;
  out.tag = Exactness::upper_bound;
  out.value = std::numeric_limits<double>::infinity();
  CMatrix best_w;
  const CounterRng root(cfg.seed);
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    CMatrix w0;
    if (r == 0) {
      w0 = CMatrix::Identity(m, rank);
    } else {
      auto rng = root.split(r);
      w0 = haar_unitary(m, rng).leftCols(rank);
    }
    auto res = conjugate_gradient(obj, std::move(w0), cfg.tol, cfg.max_iter);
    out.restart_values.push_back(res.value);
    if (res.value < out.value) {
      out.value = res.value;
      out.converged = res.converged;
      best_w = std::move(res.w);
    }
    if (out.value <= 1e-14) break;
  }
  out.value = std::max(out.value, 0.0);

  EnsembleDecomposition dec;
  const CMatrix psi = obj.vectors(best_w);
  for (Eigen::Index i = 0; i < psi.cols(); ++i) {
    const double p = psi.col(i).squaredNorm();
    dec.weights.push_back(p);
    dec.vectors.push_back(p > 0.0 ? CVector(psi.col(i) / std::sqrt(p)) : CVector(CVector::Zero(psi.rows())));
  }
  dec.isometry = best_w;
  out.witness = std::move(dec);

  if (auto two = as_two_qubit(b); two && b.d1 == 2 && b.d2 == 2) {
    out.wootters_gap = out.value - eof_2qubit(*two).value;
  }
  return out;
}

bool eof_is_exact(const QState& rho, const std::vector<std::size_t>& side) {
  if (purity(rho) >= 1.0 - kPurityTolerance) return true;
  return as_two_qubit(split_sides(rho, side)).has_value();
}

EofResult entanglement_of_formation(const QState& rho, const std::vector<std::size_t>& side,
                                    const OptimizerConfig& cfg) {
  if (purity(rho) >= 1.0 - kPurityTolerance) return eof_pure(rho, side);
  if (auto two = as_two_qubit(split_sides(rho, side))) return eof_2qubit(*two);
  return eof_upper(rho, side, cfg);
}

}  // namespace qcorr
