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

// Multi-start derivative-free minimization used for every measurement
// optimization.
//
// Restart r always starts from a point drawn from the stream split(r) of the
// configured seed (restart 0 from the best coarse-grid point when a grid is
// supplied), so adding restarts never changes earlier restarts and the
// reported minimum is nonincreasing in the restart budget.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qcorr/rng.hpp"

namespace qcorr {

struct OptimizerConfig {
  std::size_t restarts = 16;
  std::size_t grid = 12;  ///< coarse-grid points per angle
  double tol = 1e-8;      ///< simplex objective spread at termination
  std::size_t max_iter = 2000;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument for restarts == 0 or tol <= 0.
  void check() const;
};

using Objective = std::function<double(std::span<const double>)>;
using StartSampler = std::function<std::vector<double>(CounterRng&)>;

struct LocalResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;  ///< stopped on tolerance rather than iteration cap
};

/// Nelder-Mead from `start` with an axis-aligned initial simplex of size
/// `step`. After each convergence the simplex is rebuilt around the best
/// vertex; the search ends when a rebuild no longer improves by `tol`.
LocalResult nelder_mead(const Objective& f, std::vector<double> start, double step, double tol, std::size_t max_iter);

struct MinimizeResult {
  double value = 0.0;
  std::vector<double> params;
  std::vector<double> restart_values;   ///< final value per restart
  std::vector<bool> restart_converged;
  std::vector<double> trajectory;       ///< running minimum after each restart
  double spread = 0.0;                  ///< max - min over converged restarts
  bool converged = false;               ///< spread <= 10 tol
  std::size_t evaluations = 0;
};

/// Best of the grid scan and cfg.restarts Nelder-Mead refinements.
MinimizeResult minimize_multistart(const Objective& f, const std::vector<std::vector<double>>& grid,
                                   const StartSampler& sampler, const OptimizerConfig& cfg);

/// Random Givens parameters for one d-dimensional basis.
std::vector<double> random_measurement_params(std::size_t d, CounterRng& rng);

/// Bloch-sphere grid (res polar x 2 res azimuthal) in qubit Givens params.
std::vector<std::vector<double>> qubit_grid(std::size_t res);

/// Minimizes f over the d² - d Givens parameters of a d-dimensional basis.
/// Qubits get the Bloch grid; larger d use random starts only.
MinimizeResult minimize_over_measurements(const Objective& f, std::size_t d, const OptimizerConfig& cfg);

}  // namespace qcorr
