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

#include "qcorr/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcorr {

namespace {

constexpr double kDiscordCeilingSlack = 1e-4;

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::find(subset.begin(), subset.end(), k) == subset.end()) out.push_back(k);
  }
  return out;
}

OptimizedValue shifted(const MinimizeResult& r, ProjectiveMeasurement basis, double offset, double sign) {
  OptimizedValue v;
  v.value = offset + sign * r.value;
  v.argbasis = std::move(basis);
  for (double x : r.restart_values) v.restart_values.push_back(offset + sign * x);
  for (double x : r.trajectory) v.trajectory.push_back(offset + sign * x);
  v.spread = r.spread;
  v.converged = r.converged;
  v.evaluations = r.evaluations;
  return v;
}

// Product basis from concatenated per-factor Givens parameters.
CMatrix product_basis(const std::vector<std::size_t>& factor_dims, std::span<const double> params) {
  CMatrix u = CMatrix::Identity(1, 1);
  std::size_t offset = 0;
  for (auto d : factor_dims) {
    const auto n = measurement_param_count(d);
    u = kron(u, givens_unitary(d, params.subspan(offset, n)));
    offset += n;
  }
  return u;
}

}  // namespace

double mutual_information(const QState& rho, const std::vector<std::size_t>& part_a,
                          const std::vector<std::size_t>& part_b) {
  if (part_a.empty() || part_b.empty()) throw std::invalid_argument("mutual_information: empty part");
  std::vector<bool> seen(rho.num_subsystems(), false);
  for (const auto* part : {&part_a, &part_b}) {
    for (auto k : *part) {
      if (k >= rho.num_subsystems() || seen[k]) {
        throw std::invalid_argument("mutual_information: partition is not disjoint or index out of range");
      }
      seen[k] = true;
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw std::invalid_argument("mutual_information: partition must cover every subsystem");
  }
  return entropy_of(rho, part_a) + entropy_of(rho, part_b) - von_neumann_entropy(rho);
}

DiscordRun measure_correlations(const QState& rho, std::size_t measured, const OptimizerConfig& cfg) {
  if (rho.num_subsystems() < 2) throw std::invalid_argument("correlations need at least two subsystems");
  if (measured >= rho.num_subsystems()) throw std::invalid_argument("measured subsystem index out of range");
  const auto rest = complement(rho.num_subsystems(), {measured});
  const auto d = rho.dims()[measured];

  DiscordRun run;
  run.measured = measured;
  run.measured_entropy = entropy_of(rho, {measured});
  run.unmeasured_entropy = entropy_of(rho, rest);
  run.joint_entropy = von_neumann_entropy(rho);
  run.mutual_information = run.measured_entropy + run.unmeasured_entropy - run.joint_entropy;

  const MeasuredState ms(rho, {measured});
  const Objective objective = [&](std::span<const double> p) {
    return ms.avg_conditional_entropy(givens_unitary(d, p));
  };
  const auto r = minimize_over_measurements(objective, d, cfg);
  run.min_conditional_entropy = r.value;

  const auto basis = projective_from_params(measured, d, r.params);
  // J = S(rest) - min;  D = min - S(rest | measured) = I - J
  run.classical = shifted(r, basis, run.unmeasured_entropy, -1.0);
  run.discord = shifted(r, basis, run.measured_entropy - run.joint_entropy, 1.0);

  if (run.discord.value > run.measured_entropy + kDiscordCeilingSlack) {
    throw std::logic_error("discord estimate " + std::to_string(run.discord.value) +
                           " exceeds the entropy of the measured subsystem " + std::to_string(run.measured_entropy));
  }
  return run;
}

OptimizedValue classical_correlation(const QState& rho, std::size_t measured, const OptimizerConfig& cfg) {
  return measure_correlations(rho, measured, cfg).classical;
}

OptimizedValue discord(const QState& rho, std::size_t measured, const OptimizerConfig& cfg) {
  return measure_correlations(rho, measured, cfg).discord;
}

DiscordDistance discord_distance(const QState& rho, const OptimizerConfig& cfg) {
  if (rho.num_subsystems() != 2) throw std::invalid_argument("discord_distance needs a two-subsystem state");
  DiscordDistance out;
  out.left = measure_correlations(rho, 0, cfg);
  out.right = measure_correlations(rho, 1, cfg);
  out.value = std::abs(out.left.discord.value - out.right.discord.value);
  out.converged = out.left.discord.converged && out.right.discord.converged;
  return out;
}

OptimizedValue re_discord(const QState& rho, const std::vector<std::size_t>& measured, const OptimizerConfig& cfg,
                          MeasurementStructure structure, const std::vector<CMatrix>& candidates) {
  const MeasuredState ms(rho, measured);
  const double s_rho = von_neumann_entropy(rho);

  std::vector<std::size_t> factor_dims;
  if (structure == MeasurementStructure::product) {
    for (auto k : measured) factor_dims.push_back(rho.dims()[k]);
  } else {
    factor_dims.push_back(ms.measured_dim());
  }

  const Objective objective = [&](std::span<const double> p) {
    return ms.dephased_entropy(product_basis(factor_dims, p));
  };

  MinimizeResult r;
  if (factor_dims.size() == 1) {
    r = minimize_over_measurements(objective, factor_dims.front(), cfg);
  } else {
    const StartSampler sampler = [&](CounterRng& rng) {
      std::vector<double> p;
      for (auto d : factor_dims) {
        const auto part = random_measurement_params(d, rng);
        p.insert(p.end(), part.begin(), part.end());
      }
      return p;
    };
    r = minimize_multistart(objective, {}, sampler, cfg);
  }

  ProjectiveMeasurement basis{measured, product_basis(factor_dims, r.params), r.params};
  for (const auto& c : candidates) {
    if (static_cast<std::size_t>(c.rows()) != ms.measured_dim() || c.cols() != c.rows()) {
      throw std::invalid_argument("re_discord: candidate basis has the wrong dimension");
    }
    const double v = ms.dephased_entropy(c);
    ++r.evaluations;
    if (v < r.value) {
      r.value = v;
      basis = ProjectiveMeasurement{measured, c, {}};
      if (!r.trajectory.empty()) r.trajectory.back() = v;
    }
  }
  return shifted(r, std::move(basis), -s_rho, 1.0);
}

CorrelationReport correlation_report(const QState& rho, const OptimizerConfig& cfg) {
  const auto dist = discord_distance(rho, cfg);
  CorrelationReport rep;
  rep.s_a = dist.left.measured_entropy;
  rep.s_b = dist.right.measured_entropy;
  rep.s_ab = dist.left.joint_entropy;
  rep.mutual_information = dist.left.mutual_information;
  rep.j_a = dist.left.classical.value;
  rep.d_a = dist.left.discord.value;
  rep.j_b = dist.right.classical.value;
  rep.d_b = dist.right.discord.value;
  rep.discord_distance = dist.value;
  rep.left = dist.left;
  rep.right = dist.right;
  return rep;
}

}  // namespace qcorr
