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

#include "qcorr/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qcorr/correlations.hpp"
#include "qcorr/entanglement.hpp"
#include "qcorr/json_io.hpp"
#include "qcorr/verify.hpp"

namespace qcorr::cli {

namespace {

constexpr const char* kHuntLabel = "upper estimate of D_A - non-certifying";

const char* kFooter = R"(CSV columns:
  compute:  measurement_class,s_a,s_b,s_ab,mutual_information,j_a,j_b,d_a,d_b,discord_distance,converged_a,converged_b
  verify:   suite,sample,relation,lhs,rhs,slack,tol,holds,skipped,seed
  example:  quantity,reference,computed,delta,tol,ok
  hunt:     x,s_a,s_b,j_ac,d_a_upper,gap,spread,converged,trajectory (';'-separated)
Entropies are in bits. Discord values are upper estimates and classical
correlations lower estimates (minimization over projective measurements).
Exit codes: 0 success, 1 verification failure, 2 usage or input error.)";

// 12 significant digits: finer than every check tolerance.
std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string join(const std::vector<double>& xs, char sep) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? std::string(1, sep) : std::string()) + format_double(xs[i]);
  return s;
}

int emit(const CommandSpec& spec, const std::string& text, std::ostream& out, std::ostream& err) {
  if (spec.out_path.empty()) {
    out << text;
    return kSuccess;
  }
  std::ofstream f(spec.out_path, std::ios::binary);
  if (!f || !(f << text)) {
    err << "error: cannot write " << spec.out_path << '\n';
    return kUsageError;
  }
  return kSuccess;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

struct ExampleRow {
  std::string quantity;
  double reference;
  double computed;
  double tol;
  bool ok() const { return std::abs(computed - reference) <= tol; }
};

std::string render_rows(const std::string& title, const std::vector<ExampleRow>& rows, Format fmt,
                        const Json& extra) {
  if (fmt == Format::json) {
    Json j;
    j["example"] = title;
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back({{"quantity", r.quantity},
                     {"reference", r.reference},
                     {"computed", r.computed},
                     {"delta", r.computed - r.reference},
                     {"tol", r.tol},
                     {"ok", r.ok()}});
    }
    j["rows"] = std::move(arr);
    for (const auto& [k, v] : extra.items()) j[k] = v;
    return dump(j);
  }
  std::ostringstream s;
  if (fmt == Format::csv) {
    s << "quantity,reference,computed,delta,tol,ok\n";
    for (const auto& r : rows) {
      s << r.quantity << ',' << format_double(r.reference) << ',' << format_double(r.computed) << ','
        << format_double(r.computed - r.reference) << ',' << format_double(r.tol) << ',' << (r.ok() ? "true" : "false")
        << '\n';
    }
    return s.str();
  }
  s << title << '\n';
  s << std::left << std::setw(28) << "quantity" << std::setw(20) << "reference" << std::setw(20) << "computed"
    << std::setw(20) << "delta" << std::setw(10) << "tol" << "ok\n";
  for (const auto& r : rows) {
    s << std::left << std::setw(28) << r.quantity << std::setw(20) << num(r.reference) << std::setw(20)
      << num(r.computed) << std::setw(20) << num(r.computed - r.reference) << std::setw(10) << num(r.tol)
      << (r.ok() ? "yes" : "NO") << '\n';
  }
  for (const auto& [k, v] : extra.items()) s << k << ": " << v.dump() << '\n';
  return s.str();
}

QState state_for(const CommandSpec& spec, std::size_t index) {
  if (!spec.state_path.empty()) return read_state_file(spec.state_path);
  if (spec.family) {
    spec.family->check();
    return generate(*spec.family, index);
  }
  throw InputError("either --state or --family is required");
}

}  // namespace

Format format_from_string(std::string_view s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "human") return Format::human;
  throw std::invalid_argument("unknown format '" + std::string(s) + "'");
}

Dims parse_dims(std::string_view text) {
  Dims dims;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find('x', start), text.size());
    const auto part = text.substr(start, end - start);
    std::size_t v = 0;
    const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || res.ec != std::errc() || res.ptr != part.data() + part.size() || v < 1) {
      throw std::invalid_argument("bad dims '" + std::string(text) + "': expected e.g. 2x2x2");
    }
    dims.push_back(v);
    start = end + 1;
  }
  return dims;
}

Family parse_family(std::string_view tag) {
  if (tag == "example4") return Family::werner_2qubit;
  if (tag == "werner") return Family::werner_qudit;
  return family_from_string(tag);
}

std::vector<double> parse_range(std::string_view text) {
  const std::string s(text);
  const auto c1 = s.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : s.find(':', c1 + 1);
  if (c2 == std::string::npos) throw std::invalid_argument("bad range '" + s + "': expected start:end:count");
  double start = 0, end = 0;
  long long count = 0;
  try {
    std::size_t used = 0;
    start = std::stod(s.substr(0, c1), &used);
    if (used != c1) throw std::invalid_argument("");
    end = std::stod(s.substr(c1 + 1, c2 - c1 - 1), &used);
    if (used != c2 - c1 - 1) throw std::invalid_argument("");
    count = std::stoll(s.substr(c2 + 1), &used);
    if (used != s.size() - c2 - 1) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad range '" + s + "': expected start:end:count");
  }
  if (count < 1) throw std::invalid_argument("bad range '" + s + "': count must be positive");
  if (count == 1 && start != end) throw std::invalid_argument("bad range '" + s + "': count 1 needs start == end");
  std::vector<double> xs;
  for (long long i = 0; i < count; ++i) {
    xs.push_back(count == 1 ? start : start + (end - start) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return xs;
}

int cmd_compute(const CommandSpec& spec, std::ostream& out, std::ostream& err) {
  const auto rho = state_for(spec, 0);
  if (rho.num_subsystems() != 2) throw InputError("compute needs a two-subsystem state");
  const auto rep = correlation_report(rho, spec.optimizer);
  std::string text;
  switch (spec.format) {
    case Format::json: {
      auto j = to_json(rep);
      j["optimizer"] = to_json(spec.optimizer);
      text = dump(j);
      break;
    }
    case Format::csv:
      text = to_csv(rep);
      break;
    case Format::human: {
      std::ostringstream s;
      s << "measurement class:    " << rep.measurement_class << " (D upper estimate, J lower estimate)\n"
        << "S(A)                  " << num(rep.s_a) << "\n"
        << "S(B)                  " << num(rep.s_b) << "\n"
        << "S(AB)                 " << num(rep.s_ab) << "\n"
        << "I(A:B)                " << num(rep.mutual_information) << "\n"
        << "J_A                   " << num(rep.j_a) << "\n"
        << "J_B                   " << num(rep.j_b) << "\n"
        << "D_A                   " << num(rep.d_a) << (rep.left.discord.converged ? "" : "  (not converged)") << "\n"
        << "D_B                   " << num(rep.d_b) << (rep.right.discord.converged ? "" : "  (not converged)")
        << "\n"
        << "|D_A - D_B|           " << num(rep.discord_distance) << "\n"
        << "restart spread A, B   " << num(rep.left.discord.spread) << ", " << num(rep.right.discord.spread) << "\n";
      text = s.str();
      break;
    }
  }
  return emit(spec, text, out, err);
}

int cmd_verify(const CommandSpec& spec, std::ostream& out, std::ostream& err) {
  if (spec.suites.empty()) throw InputError("--suite is required");
  std::vector<std::string> relations;
  for (const auto& s : spec.suites) {
    if (s == "all") {
      for (const auto& r : known_relations()) relations.push_back(r);
    } else {
      relations.push_back(s);
    }
  }
  const auto family = spec.family.value_or(StateFamilySpec{});
  const auto rep = run_suite(family, relations, spec.samples, spec.optimizer, spec.jobs);

  std::ostringstream summary;
  summary << "suite " << rep.suite_id << ": " << rep.samples << " samples\n";
  for (const auto& [name, s] : rep.summary) {
    summary << "  " << std::left << std::setw(14) << name << "pass " << s.pass << "  fail " << s.fail << "  skip "
            << s.skip;
    if (s.survey > 0) summary << "  survey " << s.survey << " (violations " << s.survey_violations << ")";
    summary << '\n';
  }
  for (const auto* f : rep.failures()) {
    summary << "  FAILED " << f->relation << " sample " << f->provenance.sample << ": lhs " << num(f->lhs) << " rhs "
            << num(f->rhs) << " slack " << num(f->slack) << " tol " << num(f->tolerance);
    if (!f->reason.empty()) summary << " (" << f->reason << ")";
    summary << '\n';
  }
  summary << (rep.passed() ? "result: PASS\n" : "result: FAIL\n");

  std::string text;
  switch (spec.format) {
    case Format::json:
      text = dump(to_json(rep));
      break;
    case Format::csv:
      text = to_csv(rep);
      break;
    case Format::human:
      text = summary.str();
      break;
  }
  if (spec.format != Format::human || !spec.out_path.empty()) err << summary.str();
  if (const int rc = emit(spec, text, out, err); rc != kSuccess) return rc;
  return rep.passed() ? kSuccess : kVerificationFailure;
}

int cmd_example(const CommandSpec& spec, std::ostream& out, std::ostream& err) {
  const auto& cfg = spec.optimizer;
  std::vector<ExampleRow> rows;
  Json extra = Json::object();
  std::string title;

  if (spec.example == "example2") {
    title = "example2: random pure state";
    StateFamilySpec fam;
    fam.family = Family::haar_pure;
    fam.dims = spec.family ? spec.family->dims : Dims{2, 2};
    fam.seed = spec.family ? spec.family->seed : cfg.seed;
    fam.check();
    if (fam.dims.size() != 2) throw InputError("example2 needs two subsystems");
    const auto rep = correlation_report(generate(fam, 0), cfg);
    rows = {{"D_A vs S(B)", rep.s_b, rep.d_a, 1e-4},
            {"D_B vs S(A)", rep.s_a, rep.d_b, 1e-4},
            {"J_A vs S(B)", rep.s_b, rep.j_a, 1e-4},
            {"|D_A - D_B|", 0.0, rep.discord_distance, 2e-4}};
    extra["family"] = to_json(fam);
  } else if (spec.example == "example3") {
    title = "example3: two-qubit classical register over a qubit";
    const auto rho = example3_state();
    const auto run = measure_correlations(rho, 0, cfg);
    const auto bc = partial_trace(purified_abc(rho), {1, 2});
    const auto ef = entanglement_of_formation(bc, {0}, cfg);
    rows = {{"S(A)", 2.0, run.measured_entropy, 1e-9},
            {"S(B)", 1.0, run.unmeasured_entropy, 1e-9},
            {"S(AB)", 1.0, run.joint_entropy, 1e-9},
            {"purity", 0.5, purity(rho), 1e-12},
            {"E_F(BC)", 0.0, ef.value, 1e-9},
            {"D_A", 1.0, run.discord.value, 1e-3},
            {"S(B) + E_F(BC)", 1.0, run.unmeasured_entropy + ef.value, 1e-3},
            {"S(A) - S(AB) - S(B)", 0.0, run.measured_entropy - run.joint_entropy - run.unmeasured_entropy, 1e-9},
            {"J_A", 1.0, run.classical.value, 1e-3}};
    extra["eof_tag"] = std::string(to_string(ef.tag));
    extra["restart_spread"] = run.discord.spread;
  } else if (spec.example == "example4") {
    title = "example4: two-qubit Werner state at the separability boundary";
    const auto rho = werner_2qubit_example4();
    const auto run = measure_correlations(rho, 0, cfg);
    rows = {{"D_A", 0.126, run.discord.value, 0.005},
            {"J_A", 0.082, run.classical.value, 0.005},
            {"concurrence", 0.0, concurrence_2qubit(rho), 0.0},
            {"restart spread", 0.0, run.discord.spread, 1e-6}};
    extra["lindblad_violated"] = run.discord.value > run.classical.value;
    extra["argbasis"] = to_json(run.discord.argbasis);
  } else {
    throw InputError("unknown example '" + spec.example + "' (expected example2, example3 or example4)");
  }
  extra["optimizer"] = to_json(cfg);

  if (const int rc = emit(spec, render_rows(title, rows, spec.format, extra), out, err); rc != kSuccess) return rc;
  const bool all_ok = std::all_of(rows.begin(), rows.end(), [](const ExampleRow& r) { return r.ok(); });
  return all_ok ? kSuccess : kVerificationFailure;
}

int cmd_hunt(const CommandSpec& spec, std::ostream& out, std::ostream& err) {
  const auto d = spec.hunt_d;
  if (d < 2) throw InputError("--d must be at least 2");
  const auto xs = parse_range(spec.hunt_range);
  for (double x : xs) {
    if (!(x > -1.0 && x < 0.0)) throw InputError("hunt needs every x in (-1, 0); got " + num(x));
  }

  Json points = Json::array();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    err << "hunt: d=" << d << " x=" << num(x) << " (" << (i + 1) << "/" << xs.size() << ")\n" << std::flush;
    const auto rho_ac = werner_qudit(d, x);
    const auto run = measure_correlations(rho_ac, 0, spec.optimizer);
    // Purifying AC gives B with S(B) = S(AC); D_A(AB) + J_A(AC) = S(A).
    const double s_a = run.measured_entropy;
    const double s_b = run.joint_entropy;
    const double d_upper = s_a - run.classical.value;
    std::vector<double> trajectory, restarts;
    for (double j : run.classical.trajectory) trajectory.push_back(s_a - j);
    for (double j : run.classical.restart_values) restarts.push_back(s_a - j);
    points.push_back({{"x", x},
                      {"s_a", s_a},
                      {"s_b", s_b},
                      {"j_ac", run.classical.value},
                      {"d_a_upper", d_upper},
                      {"gap", d_upper - s_b},
                      {"spread", run.classical.spread},
                      {"converged", run.classical.converged},
                      {"trajectory", trajectory},
                      {"restart_values", restarts}});
  }

  std::string text;
  if (spec.format == Format::json) {
    Json j;
    j["label"] = kHuntLabel;
    j["d"] = d;
    j["range"] = spec.hunt_range;
    j["optimizer"] = to_json(spec.optimizer);
    j["points"] = std::move(points);
    text = dump(j);
  } else if (spec.format == Format::csv) {
    std::ostringstream s;
    s << "# " << kHuntLabel << '\n' << "x,s_a,s_b,j_ac,d_a_upper,gap,spread,converged,trajectory\n";
    for (const auto& p : points) {
      s << format_double(p["x"]) << ',' << format_double(p["s_a"]) << ',' << format_double(p["s_b"]) << ','
        << format_double(p["j_ac"]) << ',' << format_double(p["d_a_upper"]) << ',' << format_double(p["gap"]) << ','
        << format_double(p["spread"]) << ',' << (p["converged"].get<bool>() ? "true" : "false") << ','
        << join(p["trajectory"].get<std::vector<double>>(), ';') << '\n';
    }
    text = s.str();
  } else {
    std::ostringstream s;
    s << "Werner hunt, d = " << d << "; D_A is an " << kHuntLabel << '\n';
    for (const auto& p : points) {
      const double gap = p["gap"];
      s << "x = " << num(p["x"]) << ": D_A <= " << num(p["d_a_upper"]) << ", S(B) = " << num(p["s_b"])
        << ", gap D_A - S(B) = " << num(gap) << (gap > 0 ? " (positive)" : " (not positive)") << '\n';
      s << "  trajectory:";
      for (double v : p["trajectory"].get<std::vector<double>>()) s << ' ' << num(v);
      s << '\n';
    }
    text = s.str();
  }
  return emit(spec, text, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qcorr: quantum discord, classical correlation and entanglement of formation"};
  app.footer(kFooter);
  app.require_subcommand(1);

  CommandSpec spec;
  std::string format = "human", family, dims, suites;
  std::size_t rank = 0, index_d = 2, seed = 1;
  double x = 0.0;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "seed for sampled states and optimizer restarts");
    sub->add_option("--restarts", spec.optimizer.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
    sub->add_option("--tol", spec.optimizer.tol, "optimizer convergence tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", spec.optimizer.max_iter, "simplex iterations per restart");
    sub->add_option("--format", format, "json | csv | human")->check(CLI::IsMember({"json", "csv", "human"}));
    sub->add_option("--out", spec.out_path, "write the report here instead of standard output");
  };
  const auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", family, "state family tag");
    sub->add_option("--dims", dims, "subsystem dimensions, e.g. 2x2x2");
    sub->add_option("--rank", rank, "rank of random mixed states (0: full)");
    sub->add_option("--d", index_d, "local dimension for Werner states");
    sub->add_option("--x", x, "Werner parameter");
  };

  auto* compute = app.add_subcommand("compute", "correlation report for one state");
  compute->add_option("--state", spec.state_path, "JSON state file");
  add_family(compute);
  add_common(compute);

  auto* verify = app.add_subcommand("verify", "run verification suites over a state family");
  verify->add_option("--suite", suites, "comma-separated relations or 'all'")->required();
  verify->add_option("--samples", spec.samples, "states per suite");
  verify->add_option("--jobs", spec.jobs, "worker threads")->check(CLI::PositiveNumber);
  add_family(verify);
  add_common(verify);

  auto* example = app.add_subcommand("example", "reproduce a worked example");
  example->add_option("name", spec.example, "example2 | example3 | example4")->required();
  example->add_option("--dims", dims, "dimensions for example2");
  add_common(example);

  auto* hunt = app.add_subcommand("hunt", "search the Werner regime for D_A > S(B)");
  hunt->add_option("--d", spec.hunt_d, "local dimension");
  hunt->add_option("--x", spec.hunt_range, "start:end:count, inclusive");
  add_common(hunt);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    spec.format = format_from_string(format);
    spec.optimizer.seed = seed;
    if (!family.empty() || !dims.empty()) {
      StateFamilySpec f;
      if (!family.empty()) f.family = parse_family(family);
      if (!dims.empty()) f.dims = parse_dims(dims);
      f.rank = rank;
      f.d = index_d;
      f.x = x;
      f.seed = seed;
      spec.family = f;
    }
    std::stringstream list(suites);
    for (std::string item; std::getline(list, item, ',');) {
      if (!item.empty()) spec.suites.push_back(item);
    }
    spec.optimizer.check();

    if (*compute) {
      spec.subcommand = "compute";
      return cmd_compute(spec, out, err);
    }
    if (*verify) {
      spec.subcommand = "verify";
      return cmd_verify(spec, out, err);
    }
    if (*example) {
      spec.subcommand = "example";
      return cmd_example(spec, out, err);
    }
    spec.subcommand = "hunt";
    return cmd_hunt(spec, out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailure;
  }
}

}  // namespace qcorr::cli
