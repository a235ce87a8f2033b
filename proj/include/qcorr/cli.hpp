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

// Command-line front end. Everything except argument parsing lives here so
// that tests can drive the commands in-process.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/optimize.hpp"
#include "qcorr/states.hpp"

namespace qcorr::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2 };

enum class Format { json, csv, human };

Format format_from_string(std::string_view s);

struct CommandSpec {
  std::string subcommand;
  std::string state_path;
  std::optional<StateFamilySpec> family;
  OptimizerConfig optimizer;
  Format format = Format::human;
  std::string out_path;
  std::vector<std::string> suites;
  std::size_t samples = 100;
  std::size_t jobs = 1;
  std::string example;
  std::size_t hunt_d = 6;
  std::string hunt_range = "-0.9:-0.9:1";
};

/// "2x3x2" -> {2, 3, 2}.
Dims parse_dims(std::string_view text);

/// Family tag, also accepting "example4" and "werner".
Family parse_family(std::string_view tag);

/// "start:end:count", inclusive and evenly spaced; count 1 needs start == end.
std::vector<double> parse_range(std::string_view text);

int cmd_compute(const CommandSpec& spec, std::ostream& out, std::ostream& err);
int cmd_verify(const CommandSpec& spec, std::ostream& out, std::ostream& err);
int cmd_example(const CommandSpec& spec, std::ostream& out, std::ostream& err);
int cmd_hunt(const CommandSpec& spec, std::ostream& out, std::ostream& err);

/// Parses `args` (without the program name) and runs the chosen subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcorr::cli
