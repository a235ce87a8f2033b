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

#include "qcorr/states.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace qcorr {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 6> kFamilyNames{{
    {Family::werner_qudit, "werner_qudit"},
    {Family::werner_2qubit, "werner_2qubit"},
    {Family::example3, "example3"},
    {Family::classical_quantum, "classical_quantum"},
    {Family::haar_pure, "haar_pure"},
    {Family::random_mixed, "random_mixed"},
}};

std::vector<double> simplex_point(std::size_t n, CounterRng& rng) {
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& v : w) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    v = -std::log(u);
    total += v;
  }
  for (auto& v : w) v /= total;
  return w;
}

}  // namespace

std::string_view to_string(Family f) {
  for (const auto& [fam, name] : kFamilyNames) {
    if (fam == f) return name;
  }
  return "unknown";
}

Family family_from_string(std::string_view tag) {
  for (const auto& [fam, name] : kFamilyNames) {
    if (name == tag) return fam;
  }
  throw std::invalid_argument("unknown state family '" + std::string(tag) + "'");
}

void StateFamilySpec::check() const {
  switch (family) {
    case Family::werner_qudit:
      if (d < 2) throw std::invalid_argument("werner_qudit: d must be at least 2");
      if (!(x >= -1.0 && x <= 1.0)) throw std::invalid_argument("werner_qudit: x must lie in [-1, 1]");
      break;
    case Family::classical_quantum:
      if (dims.size() != 2) throw std::invalid_argument("classical_quantum: dims must have two entries");
      if (!weights.empty() && weights.size() != dims[0]) {
        throw std::invalid_argument("classical_quantum: one weight per classical outcome required");
      }
      if (rank > dims[1]) throw std::invalid_argument("classical_quantum: rank exceeds quantum dimension");
      break;
    case Family::haar_pure:
    case Family::random_mixed: {
      if (dims.empty()) throw std::invalid_argument("dims must be nonempty");
      for (auto v : dims) {
        if (v < 2) throw std::invalid_argument("each subsystem dimension must be at least 2");
      }
      if (family == Family::random_mixed && rank > product(dims)) {
        throw std::invalid_argument("random_mixed: rank exceeds total dimension");
      }
      break;
    }
    case Family::werner_2qubit:
    case Family::example3:
      break;
  }
}

std::uint64_t sample_seed(std::uint64_t seed, std::size_t index) { return CounterRng(seed).split(index).key(); }

QState generate(const StateFamilySpec& spec, std::size_t index) {
  spec.check();
  const auto seed = sample_seed(spec.seed, index);
  switch (spec.family) {
    case Family::werner_qudit:
      return werner_qudit(spec.d, spec.x);
    case Family::werner_2qubit:
      return werner_2qubit_example4();
    case Family::example3:
      return example3_state();
    case Family::haar_pure:
      return haar_random_pure(spec.dims, seed).to_density();
    case Family::random_mixed:
      return random_mixed(spec.dims, spec.rank == 0 ? product(spec.dims) : spec.rank, seed);
    case Family::classical_quantum: {
      CounterRng rng(seed);
      std::vector<double> w = spec.weights;
      if (w.empty()) {
        auto wr = rng.split(0);
        w = simplex_point(spec.dims[0], wr);
      }
      const auto r = spec.rank == 0 ? spec.dims[1] : spec.rank;
      std::vector<QState> parts;
      for (std::size_t k = 0; k < spec.dims[0]; ++k) {
        parts.push_back(random_mixed({spec.dims[1]}, r, rng.split(k + 1).key()));
      }
      return classical_quantum(w, parts);
    }
  }
  throw std::logic_error("unhandled family");
}

CMatrix flip_operator(std::size_t d) {
  CMatrix f = CMatrix::Zero(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) f(i * d + j, j * d + i) = 1.0;
  }
  return f;
}

QState werner_qudit(std::size_t d, double x) {
  if (d < 2) throw std::invalid_argument("werner_qudit: d must be at least 2");
  if (!(x >= -1.0 && x <= 1.0)) throw std::invalid_argument("werner_qudit: x must lie in [-1, 1]");
  const double dd = static_cast<double>(d);
  const double norm = dd * dd * dd - dd;
  const CMatrix m = ((dd - x) / norm) * CMatrix::Identity(d * d, d * d) + ((dd * x - 1.0) / norm) * flip_operator(d);
  return QState({d, d}, m);
}

QState werner_2qubit_example4() {
  CVector psi_minus = CVector::Zero(4);
  psi_minus(1) = 1.0 / std::sqrt(2.0);
  psi_minus(2) = -1.0 / std::sqrt(2.0);
  const CMatrix m = CMatrix::Identity(4, 4) / 6.0 + (psi_minus * psi_minus.adjoint()) / 3.0;
  return QState({2, 2}, m);
}

QState example3_state() {
  // ¼[(|00><00| + |01><01|) ⊗ |0><0| + (|00><10| + |01><11|) ⊗ |0><1|
  //   + (|10><00| + |11><01|) ⊗ |1><0| + (|10><10| + |11><11|) ⊗ |1><1|]
  // with A = C² ⊗ C² (index a = 2 a₁ + a₂) and flat index 2 a + b.
  CMatrix m = CMatrix::Zero(8, 8);
  auto idx = [](int a1, int a2, int b) { return (2 * a1 + a2) * 2 + b; };
  for (int a2 = 0; a2 < 2; ++a2) {
    for (int b = 0; b < 2; ++b) {
      for (int bp = 0; bp < 2; ++bp) {
        // |b a2><b' a2| on A with B ket b, bra b'
        m(idx(b, a2, b), idx(bp, a2, bp)) += 0.25;
      }
    }
  }
  return QState({4, 2}, m);
}

QState classical_quantum(std::span<const double> probs, const std::vector<QState>& states) {
  if (probs.size() != states.size() || probs.empty()) {
    throw std::invalid_argument("classical_quantum: need one state per probability");
  }
  double total = 0.0;
  for (double p : probs) {
    if (p < -1e-12) throw std::invalid_argument("classical_quantum: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("classical_quantum: probabilities must sum to 1");
  const auto& dims0 = states.front().dims();
  for (const auto& s : states) {
    if (s.dims() != dims0) throw std::invalid_argument("classical_quantum: conditional states disagree on dims");
  }
  const auto k = probs.size();
  const auto n = states.front().dim();
  CMatrix m = CMatrix::Zero(k * n, k * n);
  for (std::size_t i = 0; i < k; ++i) m.block(i * n, i * n, n, n) = probs[i] * states[i].matrix();
  Dims dims{k};
  dims.insert(dims.end(), dims0.begin(), dims0.end());
  return QState(std::move(dims), std::move(m));
}

PureStateVector haar_random_pure(const Dims& dims, std::uint64_t seed) {
  CounterRng rng(seed);
  CVector v(product(dims));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
  v.normalize();
  return PureStateVector(dims, std::move(v));
}

QState random_mixed(const Dims& dims, std::size_t rank, std::uint64_t seed) {
  const auto n = product(dims);
  if (rank == 0) rank = n;
  if (rank > n) throw std::invalid_argument("random_mixed: rank exceeds prod(dims)");
  CounterRng rng(seed);
  CMatrix g(n, rank);
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = rng.complex_normal();
  }
  CMatrix m = g * g.adjoint();
  m /= m.trace().real();
  m = 0.5 * (m + m.adjoint());
  return QState(dims, std::move(m));
}

CMatrix haar_unitary(std::size_t n, CounterRng& rng) {
  CMatrix g(n, n);
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t j = 0; j < n; ++j) {
    const Complex rjj = r(j, j);
    if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

}  // namespace qcorr
