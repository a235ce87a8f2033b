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

// JSON and CSV serialization of states and reports.
//
// State files: {"dims": [2, 2], "matrix": [[[re, im], ...], ...]}, rows in
// the tensor-product basis with subsystem 0 slowest.

#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/entanglement.hpp"
#include "qcorr/verify.hpp"

namespace qcorr {

using Json = nlohmann::ordered_json;

/// Malformed or invalid input; the message names the line or field.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json to_json(const CMatrix& m);
Json to_json(const QState& rho);
Json to_json(const ProjectiveMeasurement& m);
Json to_json(const OptimizerConfig& cfg);
Json to_json(const StateFamilySpec& spec);
Json to_json(const OptimizedValue& v);
Json to_json(const DiscordRun& run);
Json to_json(const CorrelationReport& rep);
Json to_json(const EofResult& e);
Json to_json(const BoundCheck& c);
Json to_json(const SuiteReport& rep);

/// Throws InputError with the offending field on a shape or validation error.
QState state_from_json(const Json& j);

/// Parses text; syntax errors are reported with line and column.
QState parse_state(const std::string& text);

/// Throws InputError if the file cannot be read.
QState read_state_file(const std::string& path);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

inline constexpr const char* kSuiteCsvHeader = "suite,sample,relation,lhs,rhs,slack,tol,holds,skipped,seed";
inline constexpr const char* kReportCsvHeader =
    "measurement_class,s_a,s_b,s_ab,mutual_information,j_a,j_b,d_a,d_b,discord_distance,converged_a,converged_b";

std::string to_csv(const SuiteReport& rep);
/// Header line plus one row.
std::string to_csv(const CorrelationReport& rep);

}  // namespace qcorr
