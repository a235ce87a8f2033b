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

#include "qcorr/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qcorr {

namespace {

std::string field(const std::string& path, const std::string& msg) { return path + ": " + msg; }

std::size_t read_index(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 1) throw InputError(field(path, "expected a positive integer"));
  return j.get<std::size_t>();
}

double read_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw InputError(field(path, "expected a number"));
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(field(path, "value is not finite"));
  return v;
}

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Json doubles(const std::vector<double>& xs) {
  Json a = Json::array();
  for (double x : xs) a.push_back(x);
  return a;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const QState& rho) {
  Json j;
  j["dims"] = rho.dims();
  j["matrix"] = to_json(rho.matrix());
  return j;
}

Json to_json(const ProjectiveMeasurement& m) {
  Json j;
  j["subsystem"] = m.subsystems.size() == 1 ? Json(m.subsystems.front()) : Json(m.subsystems);
  j["basis"] = to_json(m.basis);
  return j;
}

Json to_json(const OptimizerConfig& cfg) {
  Json j;
  j["restarts"] = cfg.restarts;
  j["grid"] = cfg.grid;
  j["tol"] = cfg.tol;
  j["max_iter"] = cfg.max_iter;
  j["seed"] = cfg.seed;
  return j;
}

Json to_json(const StateFamilySpec& spec) {
  Json j;
  j["family"] = std::string(to_string(spec.family));
  Json params;
  switch (spec.family) {
    case Family::werner_qudit:
      params["d"] = spec.d;
      params["x"] = spec.x;
      break;
    case Family::werner_2qubit:
    case Family::example3:
      params = Json::object();
      break;
    case Family::classical_quantum:
      params["dims"] = spec.dims;
      params["weights"] = doubles(spec.weights);
      params["rank"] = spec.rank;
      break;
    case Family::haar_pure:
      params["dims"] = spec.dims;
      break;
    case Family::random_mixed:
      params["dims"] = spec.dims;
      params["rank"] = spec.rank;
      break;
  }
  j["params"] = std::move(params);
  j["seed"] = spec.seed;
  return j;
}

Json to_json(const OptimizedValue& v) {
  Json j;
  j["value"] = v.value;
  j["converged"] = v.converged;
  j["spread"] = v.spread;
  j["evaluations"] = v.evaluations;
  j["restart_values"] = doubles(v.restart_values);
  j["trajectory"] = doubles(v.trajectory);
  j["argbasis"] = to_json(v.argbasis);
  return j;
}

Json to_json(const DiscordRun& run) {
  Json j;
  j["measured"] = run.measured;
  j["measured_entropy"] = run.measured_entropy;
  j["unmeasured_entropy"] = run.unmeasured_entropy;
  j["joint_entropy"] = run.joint_entropy;
  j["mutual_information"] = run.mutual_information;
  j["min_conditional_entropy"] = run.min_conditional_entropy;
  j["classical"] = to_json(run.classical);
  j["discord"] = to_json(run.discord);
  return j;
}

Json to_json(const CorrelationReport& rep) {
  Json j;
  j["measurement_class"] = rep.measurement_class;
  j["bias"] = "discord values are upper estimates, classical correlations lower estimates";
  j["s_a"] = rep.s_a;
  j["s_b"] = rep.s_b;
  j["s_ab"] = rep.s_ab;
  j["mutual_information"] = rep.mutual_information;
  j["j_a"] = rep.j_a;
  j["j_b"] = rep.j_b;
  j["d_a"] = rep.d_a;
  j["d_b"] = rep.d_b;
  j["discord_distance"] = rep.discord_distance;
  j["converged_a"] = rep.left.discord.converged;
  j["converged_b"] = rep.right.discord.converged;
  j["measured_a"] = to_json(rep.left);
  j["measured_b"] = to_json(rep.right);
  return j;
}

Json to_json(const EofResult& e) {
  Json j;
  j["value"] = e.value;
  j["tag"] = std::string(to_string(e.tag));
  j["converged"] = e.converged;
  if (e.wootters_gap) j["wootters_gap"] = *e.wootters_gap;
  j["restart_values"] = doubles(e.restart_values);
  if (e.witness) {
    Json w;
    w["weights"] = doubles(e.witness->weights);
    Json vs = Json::array();
    for (const auto& v : e.witness->vectors) {
      Json col = Json::array();
      for (Eigen::Index i = 0; i < v.size(); ++i) col.push_back(Json::array({v(i).real(), v(i).imag()}));
      vs.push_back(std::move(col));
    }
    w["vectors"] = std::move(vs);
    j["witness"] = std::move(w);
  }
  return j;
}

Json to_json(const BoundCheck& c) {
  Json j;
  j["relation"] = c.relation;
  j["kind"] = c.kind == CheckKind::identity ? "identity" : "inequality";
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["slack"] = c.slack;
  j["tol"] = c.tolerance;
  j["holds"] = c.holds;
  j["skipped"] = c.skipped;
  j["survey"] = c.survey;
  if (!c.reason.empty()) j["reason"] = c.reason;
  j["equality"] = c.equality ? Json(*c.equality) : Json(nullptr);
  Json values = Json::object();
  for (const auto& [k, v] : c.values) values[k] = v;
  j["values"] = std::move(values);
  Json prov;
  if (c.provenance.family) prov["family"] = to_json(*c.provenance.family);
  prov["sample"] = c.provenance.sample;
  prov["sample_seed"] = c.provenance.sample_seed;
  if (c.provenance.optimizer) prov["optimizer"] = to_json(*c.provenance.optimizer);
  j["provenance"] = std::move(prov);
  return j;
}

Json to_json(const SuiteReport& rep) {
  Json j;
  j["suite"] = rep.suite_id;
  j["family"] = to_json(rep.family);
  j["optimizer"] = to_json(rep.optimizer);
  j["samples"] = rep.samples;
  j["relations"] = rep.relations;
  j["passed"] = rep.passed();
  Json summary;
  for (const auto& [name, s] : rep.summary) {
    summary[name] = {{"pass", s.pass},
                     {"fail", s.fail},
                     {"skip", s.skip},
                     {"survey", s.survey},
                     {"survey_violations", s.survey_violations}};
  }
  j["summary"] = std::move(summary);
  Json failures = Json::array();
  for (const auto* f : rep.failures()) {
    failures.push_back({{"relation", f->relation},
                        {"sample", f->provenance.sample},
                        {"regenerate", {{"family", to_json(rep.family)}, {"sample", f->provenance.sample}}}});
  }
  j["failures"] = std::move(failures);
  Json rows = Json::array();
  for (const auto& c : rep.rows) rows.push_back(to_json(c));
  j["rows"] = std::move(rows);
  return j;
}

QState state_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("state: expected a JSON object");
  if (!j.contains("dims")) throw InputError("dims: missing field");
  if (!j.contains("matrix")) throw InputError("matrix: missing field");
  const auto& jd = j.at("dims");
  if (!jd.is_array() || jd.empty()) throw InputError("dims: expected a nonempty array of integers");
  Dims dims;
  for (std::size_t k = 0; k < jd.size(); ++k) dims.push_back(read_index(jd[k], "dims[" + std::to_string(k) + "]"));
  const auto n = product(dims);

  const auto& jm = j.at("matrix");
  if (!jm.is_array() || jm.size() != n) {
    throw InputError(field("matrix", "expected " + std::to_string(n) + " rows for dims product " + std::to_string(n)));
  }
  CMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto row_path = "matrix[" + std::to_string(r) + "]";
    const auto& row = jm[r];
    if (!row.is_array() || row.size() != n) throw InputError(field(row_path, "expected " + std::to_string(n) + " entries"));
    for (std::size_t c = 0; c < n; ++c) {
      const auto path = row_path + "[" + std::to_string(c) + "]";
      const auto& e = row[c];
      if (!e.is_array() || e.size() != 2) throw InputError(field(path, "expected a [re, im] pair"));
      m(r, c) = Complex(read_number(e[0], path + "[0]"), read_number(e[1], path + "[1]"));
    }
  }
  const auto diag = validate(dims, m);
  if (!diag.ok()) throw InputError("matrix: " + diag.describe());
  return QState(std::move(dims), std::move(m));
}

QState parse_state(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_and_column(text, e.byte);
    throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
  return state_from_json(j);
}

QState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_state(buf.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string to_csv(const SuiteReport& rep) {
  std::ostringstream out;
  out << kSuiteCsvHeader << '\n';
  for (const auto& c : rep.rows) {
    out << csv_field(rep.suite_id) << ',' << c.provenance.sample << ',' << c.relation << ',' << format_double(c.lhs)
        << ',' << format_double(c.rhs) << ',' << format_double(c.slack) << ',' << format_double(c.tolerance) << ','
        << (c.holds ? "true" : "false") << ',' << (c.skipped ? "true" : "false") << ',' << c.provenance.sample_seed
        << '\n';
  }
  return out.str();
}

std::string to_csv(const CorrelationReport& rep) {
  std::ostringstream out;
  out << kReportCsvHeader << '\n'
      << rep.measurement_class << ',' << format_double(rep.s_a) << ',' << format_double(rep.s_b) << ','
      << format_double(rep.s_ab) << ',' << format_double(rep.mutual_information) << ',' << format_double(rep.j_a)
      << ',' << format_double(rep.j_b) << ',' << format_double(rep.d_a) << ',' << format_double(rep.d_b) << ','
      << format_double(rep.discord_distance) << ',' << (rep.left.discord.converged ? "true" : "false") << ','
      << (rep.right.discord.converged ? "true" : "false") << '\n';
  return out.str();
}

}  // namespace qcorr
