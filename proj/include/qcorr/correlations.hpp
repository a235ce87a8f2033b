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

// Correlation measures optimized over rank-1 projective measurements.
//
// Every optimized quantity is an estimate with a known bias direction: the
// minimization over measurements is truncated, so discord estimates are upper
// bounds (D̂ ≥ D) and classical-correlation estimates are lower bounds
// (Ĵ ≤ J). Values are "projective-optimal"; general POVMs are not searched.

#pragma once

#include <string>
#include <vector>

#include "qcorr/measurement.hpp"
#include "qcorr/optimize.hpp"
#include "qcorr/qstate.hpp"

namespace qcorr {

inline constexpr const char* kMeasurementClassLabel = "projective-optimal";

struct OptimizedValue {
  double value = 0.0;  ///< bits
  ProjectiveMeasurement argbasis;
  std::vector<double> restart_values;
  std::vector<double> trajectory;  ///< best value after each restart
  double spread = 0.0;
  bool converged = false;
  std::size_t evaluations = 0;
};

/// One optimizer run on `measured` shared by J and D, so that I = J + D.
struct DiscordRun {
  std::size_t measured = 0;
  double measured_entropy = 0.0;    ///< S of the measured subsystem
  double unmeasured_entropy = 0.0;  ///< S of the remaining subsystems
  double joint_entropy = 0.0;
  double mutual_information = 0.0;
  double min_conditional_entropy = 0.0;  ///< min over bases of sum p_k S(ρ_k)
  OptimizedValue classical;
  OptimizedValue discord;
};

/// S(A) + S(B) - S(AB) for a disjoint partition covering every subsystem.
double mutual_information(const QState& rho, const std::vector<std::size_t>& part_a,
                          const std::vector<std::size_t>& part_b);

/// Optimizes the average conditional entropy of the unmeasured subsystems.
/// Throws std::logic_error if the discord estimate exceeds S(measured) + 1e-4,
/// a proved bound that no basis can violate.
DiscordRun measure_correlations(const QState& rho, std::size_t measured, const OptimizerConfig& cfg);

OptimizedValue classical_correlation(const QState& rho, std::size_t measured, const OptimizerConfig& cfg);
OptimizedValue discord(const QState& rho, std::size_t measured, const OptimizerConfig& cfg);

struct DiscordDistance {
  double value = 0.0;
  DiscordRun left;   ///< measured on subsystem 0
  DiscordRun right;  ///< measured on subsystem 1
  bool converged = false;
};

/// |D_A - D_B| for a two-subsystem state.
DiscordDistance discord_distance(const QState& rho, const OptimizerConfig& cfg);

enum class MeasurementStructure { joint, product };

/// min over bases of S(Π(ρ)) - S(ρ). With several measured subsystems the
/// basis is either a full joint basis on their product (`joint`) or a
/// product of per-subsystem bases (`product`). `candidates` are extra bases
/// on the measured product space, evaluated as-is and kept if better.
OptimizedValue re_discord(const QState& rho, const std::vector<std::size_t>& measured, const OptimizerConfig& cfg,
                          MeasurementStructure structure = MeasurementStructure::joint,
                          const std::vector<CMatrix>& candidates = {});

struct CorrelationReport {
  std::string measurement_class = kMeasurementClassLabel;
  double s_a = 0.0;
  double s_b = 0.0;
  double s_ab = 0.0;
  double mutual_information = 0.0;
  double j_a = 0.0;
  double j_b = 0.0;
  double d_a = 0.0;
  double d_b = 0.0;
  double discord_distance = 0.0;
  DiscordRun left;
  DiscordRun right;
};

/// All measures of a two-subsystem state.
CorrelationReport correlation_report(const QState& rho, const OptimizerConfig& cfg);

}  // namespace qcorr
