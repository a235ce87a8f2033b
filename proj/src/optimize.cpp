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

#include "qcorr/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace qcorr {

namespace {

constexpr std::size_t kMaxRebuilds = 6;

struct Simplex {
  std::vector<std::vector<double>> points;
  std::vector<double> values;
};

}  // namespace

void OptimizerConfig::check() const {
  if (restarts < 1) throw std::invalid_argument("optimizer restarts must be at least 1");
  if (!(tol > 0.0)) throw std::invalid_argument("optimizer tolerance must be positive");
}

LocalResult nelder_mead(const Objective& f, std::vector<double> start, double step, double tol, std::size_t max_iter) {
  const auto n = start.size();
  LocalResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    return f(x);
  };
  if (n == 0) {
    res.x = start;
    res.value = eval(start);
    res.converged = true;
    return res;
  }

  std::vector<double> best = std::move(start);
  double best_value = eval(best);
  double rebuild_step = step;
  std::vector<std::size_t> idx(n + 1);

  for (std::size_t rebuild = 0; rebuild < kMaxRebuilds; ++rebuild) {
    Simplex s;
    s.points.push_back(best);
    s.values.push_back(best_value);
    for (std::size_t i = 0; i < n; ++i) {
      auto p = best;
      p[i] += rebuild_step;
      s.values.push_back(eval(p));
      s.points.push_back(std::move(p));
    }

    bool local_converged = false;
    while (res.iterations < max_iter) {
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return s.values[a] < s.values[b]; });
      const auto lo = idx.front();
      const auto hi = idx.back();
      const auto second = idx[n - 1];
      if (s.values[hi] - s.values[lo] <= tol) {
        local_converged = true;
        break;
      }
      ++res.iterations;

      std::vector<double> centroid(n, 0.0);
      for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
        for (std::size_t j = 0; j < n; ++j) centroid[j] += s.points[idx[k]][j];
      }
      for (auto& c : centroid) c /= static_cast<double>(n);

      auto along = [&](double t) {
        std::vector<double> p(n);
        for (std::size_t j = 0; j < n; ++j) p[j] = centroid[j] + t * (s.points[hi][j] - centroid[j]);
        return p;
      };

      auto reflected = along(-1.0);
      const double fr = eval(reflected);
      if (fr < s.values[lo]) {
        auto expanded = along(-2.0);
        const double fe = eval(expanded);
        if (fe < fr) {
          s.points[hi] = std::move(expanded);
          s.values[hi] = fe;
        } else {
          s.points[hi] = std::move(reflected);
          s.values[hi] = fr;
        }
        continue;
      }
      if (fr < s.values[second]) {
        s.points[hi] = std::move(reflected);
        s.values[hi] = fr;
        continue;
      }
      const bool outside = fr < s.values[hi];
      auto contracted = along(outside ? -0.5 : 0.5);
      const double fc = eval(contracted);
      if (fc < (outside ? fr : s.values[hi])) {
        s.points[hi] = std::move(contracted);
        s.values[hi] = fc;
        continue;
      }
      // shrink toward the best vertex
      for (std::size_t k = 1; k < idx.size(); ++k) {
        auto& p = s.points[idx[k]];
        for (std::size_t j = 0; j < n; ++j) p[j] = s.points[lo][j] + 0.5 * (p[j] - s.points[lo][j]);
        s.values[idx[k]] = eval(p);
      }
    }

    const auto lo = static_cast<std::size_t>(std::min_element(s.values.begin(), s.values.end()) - s.values.begin());
    const double improvement = best_value - s.values[lo];
    if (s.values[lo] < best_value) {
      best = s.points[lo];
      best_value = s.values[lo];
    }
    if (!local_converged) {
      res.converged = false;
      break;
    }
    res.converged = true;
    if (rebuild > 0 && improvement <= tol) break;
    rebuild_step = std::max(0.5 * rebuild_step, 1e-3);
  }

  res.x = std::move(best);
  res.value = best_value;
  return res;
}

MinimizeResult minimize_multistart(const Objective& f, const std::vector<std::vector<double>>& grid,
                                   const StartSampler& sampler, const OptimizerConfig& cfg) {
  cfg.check();
  MinimizeResult out;
  out.value = std::numeric_limits<double>::infinity();

  std::vector<double> grid_best;
  double grid_best_value = std::numeric_limits<double>::infinity();
  for (const auto& p : grid) {
    const double v = f(p);
    ++out.evaluations;
    if (v < grid_best_value) {
      grid_best_value = v;
      grid_best = p;
    }
  }

  const CounterRng root(cfg.seed);
  constexpr double kStep = 0.4;
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    std::vector<double> start;
    if (r == 0 && !grid_best.empty()) {
      start = grid_best;
    } else {
      auto rng = root.split(r);
      start = sampler(rng);
    }
    auto local = nelder_mead(f, std::move(start), kStep, cfg.tol, cfg.max_iter);
    out.evaluations += local.evaluations;
    out.restart_values.push_back(local.value);
    out.restart_converged.push_back(local.converged);
    if (local.value < out.value) {
      out.value = local.value;
      out.params = std::move(local.x);
    }
    out.trajectory.push_back(out.value);
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < out.restart_values.size(); ++r) {
    if (!out.restart_converged[r]) continue;
    lo = std::min(lo, out.restart_values[r]);
    hi = std::max(hi, out.restart_values[r]);
  }
  out.spread = hi >= lo ? hi - lo : std::numeric_limits<double>::infinity();
  out.converged = out.spread <= 10.0 * cfg.tol;
  return out;
}

std::vector<double> random_measurement_params(std::size_t d, CounterRng& rng) {
  const auto pairs = d * (d - 1) / 2;
  std::vector<double> p(2 * pairs);
  for (std::size_t i = 0; i < pairs; ++i) p[i] = rng.uniform(0.0, std::numbers::pi);
  for (std::size_t i = pairs; i < 2 * pairs; ++i) p[i] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return p;
}

std::vector<std::vector<double>> qubit_grid(std::size_t res) {
  std::vector<std::vector<double>> g;
  if (res == 0) return g;
  const std::size_t n_theta = std::max<std::size_t>(res, 2);
  const std::size_t n_phi = 2 * res;
  for (std::size_t i = 0; i < n_theta; ++i) {
    // Givens angle θ covers Bloch polar angle 2θ in [0, π]
    const double theta = 0.5 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_theta - 1);
    for (std::size_t j = 0; j < n_phi; ++j) {
      g.push_back({theta, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_phi)});
    }
  }
  return g;
}

MinimizeResult minimize_over_measurements(const Objective& f, std::size_t d, const OptimizerConfig& cfg) {
  const auto grid = d == 2 ? qubit_grid(cfg.grid) : std::vector<std::vector<double>>{};
  return minimize_multistart(f, grid, [d](CounterRng& rng) { return random_measurement_params(d, rng); }, cfg);
}

}  // namespace qcorr
