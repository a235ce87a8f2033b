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

#include "qcorr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>

namespace qcorr {

namespace {

constexpr double kPurityFloor = 1.0 - 1e-9;

void require_bipartite(const QState& rho, const char* what) {
  if (rho.num_subsystems() != 2) {
    throw std::invalid_argument(std::string(what) + ": expected a two-subsystem state");
  }
}

void require_pure_tripartite(const QState& rho, const char* what) {
  if (rho.num_subsystems() != 3) {
    throw std::invalid_argument(std::string(what) + ": expected a three-subsystem state");
  }
  if (purity(rho) < kPurityFloor) {
    throw std::invalid_argument(std::string(what) + ": state is mixed (purity " + std::to_string(purity(rho)) + ")");
  }
}

// Environment marginal ρ^BC of the canonical purification, as (B, C).
QState environment_bc(const QState& abc) { return partial_trace(abc, {1, 2}); }
QState environment_ac(const QState& abc) { return partial_trace(abc, {0, 2}); }

EofResult eof_first_side(const QState& rho, const OptimizerConfig& cfg) {
  return entanglement_of_formation(rho, {0}, cfg);
}

bool is_exact(const EofResult& e) { return e.tag != Exactness::upper_bound; }

// An upper bound at or below the threshold certifies E_F = 0 just as well as
// an exact value does.
bool vanishes(const EofResult& e) { return e.value <= tol::kEquality; }

void note(BoundCheck& c, std::string name, double v) { c.values.emplace_back(std::move(name), v); }

}  // namespace

BoundCheck make_inequality(std::string relation, double lhs, double rhs, double tolerance) {
  BoundCheck c;
  c.relation = std::move(relation);
  c.kind = CheckKind::inequality;
  c.lhs = lhs;
  c.rhs = rhs;
  c.slack = rhs - lhs;
  c.tolerance = tolerance;
  c.holds = c.slack >= -tolerance;
  return c;
}

BoundCheck make_identity(std::string relation, double lhs, double rhs, double tolerance) {
  BoundCheck c;
  c.relation = std::move(relation);
  c.kind = CheckKind::identity;
  c.lhs = lhs;
  c.rhs = rhs;
  c.slack = std::abs(lhs - rhs);
  c.tolerance = tolerance;
  c.holds = c.slack <= tolerance;
  return c;
}

BoundCheck make_skipped(std::string relation, std::string reason) {
  BoundCheck c;
  c.relation = std::move(relation);
  c.skipped = true;
  c.reason = std::move(reason);
  return c;
}

QState purified_abc(const QState& rho_ab) {
  require_bipartite(rho_ab, "purified_abc");
  return purify(rho_ab).to_density();
}

BoundCheck check_eq5(const QState& rho_ab) {
  require_bipartite(rho_ab, "check_eq5");
  const double s_a = entropy_of(rho_ab, {0});
  const double s_b = entropy_of(rho_ab, {1});
  const double s_ab = von_neumann_entropy(rho_ab);
  auto c = make_inequality("eq5", s_a + s_b - s_ab, 2.0 * std::min(s_a, s_b), tol::kExact);
  c.equality = std::abs(c.slack) <= tol::kEquality;
  return c;
}

BoundCheck check_conj1(const QState& rho_ab, const OptimizerConfig& cfg) {
  require_bipartite(rho_ab, "check_conj1");
  try {
    const auto run = measure_correlations(rho_ab, 0, cfg);
    return make_inequality("conj1", run.discord.value, run.measured_entropy, tol::kDiscordCeiling);
  } catch (const std::logic_error& e) {
    auto c = make_inequality("conj1", 1.0, 0.0, tol::kDiscordCeiling);
    c.reason = e.what();
    return c;
  }
}

BoundCheck check_koashi_winter(const QState& rho_ab, const OptimizerConfig& cfg) {
  require_bipartite(rho_ab, "check_koashi_winter");
  const auto abc = purified_abc(rho_ab);
  const auto bc = environment_bc(abc);
  if (!eof_is_exact(bc, {0})) {
    return make_skipped("kw", "E_F(BC) has no exact path for B x C = " + std::to_string(bc.dims()[0]) + "x" +
                                  std::to_string(bc.dims()[1]));
  }
  const auto ef = eof_first_side(bc, cfg);
  const auto run = measure_correlations(rho_ab, 0, cfg);
  auto c = make_identity("kw", ef.value + run.classical.value, run.unmeasured_entropy, tol::kSingleEstimate);
  note(c, "E_F(BC)", ef.value);
  note(c, "J_A", run.classical.value);
  return c;
}

BoundCheck check_monogamy(const QState& rho_abc, const OptimizerConfig& cfg) {
  require_pure_tripartite(rho_abc, "check_monogamy");
  const auto ab = partial_trace(rho_abc, {0, 1});
  const auto ac = partial_trace(rho_abc, {0, 2});
  const auto d_ab = measure_correlations(ab, 0, cfg);
  const auto j_ac = measure_correlations(ac, 0, cfg);
  auto c = make_identity("monogamy", d_ab.discord.value + j_ac.classical.value, d_ab.measured_entropy,
                         tol::kPairedEstimate);
  note(c, "D_A(AB)", d_ab.discord.value);
  note(c, "J_A(AC)", j_ac.classical.value);
  return c;
}

BoundCheck check_eq8(const QState& rho_ab, const OptimizerConfig& cfg) {
  require_bipartite(rho_ab, "check_eq8");
  const auto abc = purified_abc(rho_ab);
  const auto bc = environment_bc(abc);
  if (!eof_is_exact(bc, {0})) return make_skipped("eq8", "E_F(BC) has no exact path");
  const auto ef = eof_first_side(bc, cfg);
  const auto run = measure_correlations(rho_ab, 0, cfg);
  const double s_b_given_a = run.joint_entropy - run.measured_entropy;
  auto c = make_identity("eq8", run.discord.value - ef.value, -s_b_given_a, tol::kSingleEstimate);
  note(c, "D_A", run.discord.value);
  note(c, "E_F(BC)", ef.value);
  return c;
}

BoundCheck check_thm1(const QState& rho_ab, const OptimizerConfig& cfg) {
  require_bipartite(rho_ab, "check_thm1");
  const auto abc = purified_abc(rho_ab);
  const auto ef = eof_first_side(environment_bc(abc), cfg);
  const auto run = measure_correlations(rho_ab, 0, cfg);
  auto c = make_inequality("thm1", run.discord.value, run.unmeasured_entropy + ef.value, tol::kSingleEstimate);
  note(c, "E_F(BC)", ef.value);
  if (is_exact(ef)) {
    // S(C) = S(AB) for the purification
    c.equality = std::abs(run.measured_entropy - run.unmeasured_entropy - run.joint_entropy) <= tol::kEquality;
  } else {
    c.reason = "E_F(BC) is an upper bound; equality condition not evaluated";
  }
  return c;
}

BoundCheck check_cor1(const QState& rho_ab, const OptimizerConfig& cfg) {
  require_bipartite(rho_ab, "check_cor1");
  const auto abc = purified_abc(rho_ab);
  const auto ef = eof_first_side(environment_bc(abc), cfg);
  if (!vanishes(ef)) return make_skipped("cor1", "E_F(BC) = " + std::to_string(ef.value) + " is not zero");
  const auto run = measure_correlations(rho_ab, 0, cfg);
  auto c = make_inequality("cor1", run.discord.value, run.unmeasured_entropy, tol::kSingleEstimate);
  c.equality = std::abs(run.measured_entropy - run.unmeasured_entropy - run.joint_entropy) <= tol::kEquality;
  note(c, "E_F(BC)", ef.value);
  return c;
}

BoundCheck check_lindblad_lemma3(const QState& rho_ab, const OptimizerConfig& cfg) {
  require_bipartite(rho_ab, "check_lindblad_lemma3");
  const auto abc = purified_abc(rho_ab);
  const auto ef = eof_first_side(environment_bc(abc), cfg);
  const auto run = measure_correlations(rho_ab, 0, cfg);
  auto c = make_inequality("lindblad", run.discord.value, run.classical.value, tol::kPairedEstimate);
  note(c, "E_F(BC)", ef.value);
  if (!vanishes(ef)) {
    c.survey = true;
    c.reason = "E_F(BC) = " + std::to_string(ef.value) + " is not zero; survey only";
  }
  return c;
}

BoundCheck check_eq12(const QState& rho_abc) {
  require_pure_tripartite(rho_abc, "check_eq12");
  const double b_given_a = conditional_entropy(rho_abc, 1, 0);
  const double b_given_c = conditional_entropy(rho_abc, 1, 2);
  return make_identity("eq12", b_given_a + b_given_c, 0.0, tol::kExact);
}

Thm2Check check_thm2(const QState& rho_ab, const OptimizerConfig& cfg) {
  require_bipartite(rho_ab, "check_thm2");
  const auto abc = purified_abc(rho_ab);
  const auto ef_bc = eof_first_side(environment_bc(abc), cfg);
  const auto ef_ac = eof_first_side(environment_ac(abc), cfg);
  if (!vanishes(ef_bc) || !vanishes(ef_ac)) {
    std::ostringstream why;
    why << "hypothesis not met: E_F(AC) = " << ef_ac.value << ", E_F(BC) = " << ef_bc.value;
    return {make_skipped("thm2", why.str()), make_skipped("thm2_note", why.str())};
  }
  const auto dist = discord_distance(rho_ab, cfg);
  const double d_a = dist.left.discord.value;
  const double d_b = dist.right.discord.value;
  Thm2Check out{make_inequality("thm2", std::abs(d_a - d_b), dist.left.joint_entropy, tol::kPairedEstimate),
                make_identity("thm2_note", d_a - d_b, dist.left.measured_entropy - dist.right.measured_entropy,
                              tol::kPairedEstimate)};
  for (auto* c : {&out.bound, &out.identity}) {
    note(*c, "D_A", d_a);
    note(*c, "D_B", d_b);
  }
  return out;
}

BoundCheck check_cor2(const QState& rho_ab, const OptimizerConfig& cfg) {
  require_bipartite(rho_ab, "check_cor2");
  const auto abc = purified_abc(rho_ab);
  const auto ef_bc = eof_first_side(environment_bc(abc), cfg);
  const auto ef_ac = eof_first_side(environment_ac(abc), cfg);
  if (!vanishes(ef_bc) || !vanishes(ef_ac)) {
    std::ostringstream why;
    why << "hypothesis not met: E_F(AC) = " << ef_ac.value << ", E_F(BC) = " << ef_bc.value;
    return make_skipped("cor2", why.str());
  }
  const auto dist = discord_distance(rho_ab, cfg);
  const double d_a = dist.left.discord.value;
  const double d_b = dist.right.discord.value;
  auto c = make_inequality("cor2", d_b - d_a, dist.left.joint_entropy, tol::kPairedEstimate);
  c.equality = std::abs(d_b - dist.right.classical.value) <= tol::kPairedEstimate;
  note(c, "D_A", d_a);
  note(c, "D_B", d_b);
  note(c, "J_B", dist.right.classical.value);
  return c;
}

Thm3Check check_thm3(const QState& rho, const OptimizerConfig& cfg) {
  if (rho.num_subsystems() != 3) throw std::invalid_argument("check_thm3: expected a three-subsystem state");
  const double s_rho = von_neumann_entropy(rho);

  const auto d_b = re_discord(rho, {1}, cfg);
  const auto after_b = dephase(rho, d_b.argbasis);
  const auto d_c_after_b = re_discord(after_b, {2}, cfg);
  const auto after_bc = dephase(after_b, d_c_after_b.argbasis);
  const double chain_value = von_neumann_entropy(after_bc) - s_rho;

  const CMatrix warm = kron(d_b.argbasis.basis, d_c_after_b.argbasis.basis);
  const auto d_bc = re_discord(rho, {1, 2}, cfg, MeasurementStructure::joint, {warm});
  const auto d_c = re_discord(rho, {2}, cfg);

  Thm3Check out{make_inequality("thm3a", d_bc.value, chain_value, tol::kExact),
                make_inequality("thm3b", d_bc.value, d_b.value + d_c.value, tol::kPairedEstimate)};
  note(out.chain, "D_B", d_b.value);
  note(out.chain, "D_C(after B)", d_c_after_b.value);
  note(out.chain, "chain residual", std::abs(d_b.value + d_c_after_b.value - chain_value));
  note(out.aggregate, "D_B", d_b.value);
  note(out.aggregate, "D_C", d_c.value);
  return out;
}

BoundCheck check_kw_pointwise(const QState& rho_abc, const ProjectiveMeasurement& m) {
  require_pure_tripartite(rho_abc, "check_kw_pointwise");
  if (m.subsystems != std::vector<std::size_t>{0}) {
    throw std::invalid_argument("check_kw_pointwise: measurement must act on subsystem 0");
  }
  const auto ab = partial_trace(rho_abc, {0, 1});
  const auto ac = partial_trace(rho_abc, {0, 2});
  const double b_given_e = avg_conditional_entropy(apply_measurement(ab, m));
  const double c_given_e = avg_conditional_entropy(apply_measurement(ac, m));
  const double b_given_a = conditional_entropy(rho_abc, 1, 0);
  const double s_c = entropy_of(rho_abc, {2});
  return make_identity("kw_pointwise", (b_given_e - b_given_a) + (s_c - c_given_e), entropy_of(rho_abc, {0}),
                       tol::kExact);
}

bool SuiteReport::passed() const {
  return std::none_of(rows.begin(), rows.end(), [](const BoundCheck& c) { return c.failed(); });
}

std::vector<const BoundCheck*> SuiteReport::failures() const {
  std::vector<const BoundCheck*> out;
  for (const auto& c : rows) {
    if (c.failed()) out.push_back(&c);
  }
  return out;
}

const std::vector<std::string>& known_relations() {
  static const std::vector<std::string> names{"eq5",  "conj1", "kw",   "monogamy", "eq8",  "thm1",        "cor1",
                                              "lindblad", "eq12", "thm2", "cor2",     "thm3", "kw_pointwise"};
  return names;
}

namespace {

// The state forms a relation needs, derived from whatever the family emits.
struct SampleForms {
  QState state;
  std::optional<QState> bipartite;      // ρ^AB
  std::optional<QState> pure_abc;       // pure (A, B, C)
  std::optional<QState> tripartite;     // any (A, B, C)
  std::string pure_reason;
};

SampleForms forms_of(QState state) {
  SampleForms f{state, std::nullopt, std::nullopt, std::nullopt, {}};
  const auto n = state.num_subsystems();
  if (n == 2) {
    f.bipartite = state;
    f.pure_abc = purified_abc(state);
    f.tripartite = f.pure_abc;
  } else if (n >= 3) {
    f.bipartite = partial_trace(state, {0, 1});
    if (n == 3) {
      f.tripartite = state;
      if (purity(state) >= kPurityFloor) {
        f.pure_abc = state;
      } else {
        f.pure_reason = "needs a pure three-subsystem state; this one is mixed";
      }
    } else {
      f.pure_reason = "needs a three-subsystem state";
    }
  } else {
    f.pure_reason = "needs at least two subsystems";
  }
  return f;
}

std::vector<BoundCheck> run_relation(const std::string& name, const SampleForms& f, std::uint64_t seed,
                                     const OptimizerConfig& cfg) {
  const auto bip = [&]() -> const QState& {
    if (!f.bipartite) throw std::invalid_argument("relation " + name + " needs at least two subsystems");
    return *f.bipartite;
  };
  if (name == "eq5") return {check_eq5(bip())};
  if (name == "conj1") return {check_conj1(bip(), cfg)};
  if (name == "kw") return {check_koashi_winter(bip(), cfg)};
  if (name == "eq8") return {check_eq8(bip(), cfg)};
  if (name == "thm1") return {check_thm1(bip(), cfg)};
  if (name == "cor1") return {check_cor1(bip(), cfg)};
  if (name == "lindblad") return {check_lindblad_lemma3(bip(), cfg)};
  if (name == "cor2") return {check_cor2(bip(), cfg)};
  if (name == "thm2") {
    auto r = check_thm2(bip(), cfg);
    return {std::move(r.bound), std::move(r.identity)};
  }
  if (name == "thm3") {
    if (!f.tripartite) return {make_skipped("thm3a", "needs three subsystems"), make_skipped("thm3b", "needs three subsystems")};
    auto r = check_thm3(*f.tripartite, cfg);
    return {std::move(r.chain), std::move(r.aggregate)};
  }
  if (name == "monogamy" || name == "eq12" || name == "kw_pointwise") {
    if (!f.pure_abc) return {make_skipped(name, f.pure_reason)};
    if (name == "monogamy") return {check_monogamy(*f.pure_abc, cfg)};
    if (name == "eq12") return {check_eq12(*f.pure_abc)};
    std::vector<BoundCheck> rows;
    CounterRng rng(seed);
    const auto d_a = f.pure_abc->dims()[0];
    for (std::size_t j = 0; j < kPointwiseMeasurements; ++j) {
      auto stream = rng.split(j);
      const auto params = random_measurement_params(d_a, stream);
      rows.push_back(check_kw_pointwise(*f.pure_abc, projective_from_params(0, d_a, params)));
    }
    return rows;
  }
  throw std::invalid_argument("unknown relation: " + name);
}

std::vector<BoundCheck> run_sample(const StateFamilySpec& spec, const std::vector<std::string>& relations,
                                   std::size_t index, const OptimizerConfig& cfg) {
  const auto seed = sample_seed(spec.seed, index);
  const auto forms = forms_of(generate(spec, index));
  std::vector<BoundCheck> rows;
  for (const auto& name : relations) {
    std::vector<BoundCheck> part;
    try {
      part = run_relation(name, forms, seed, cfg);
    } catch (const std::logic_error& e) {
      if (dynamic_cast<const std::invalid_argument*>(&e) != nullptr) throw;
      // an internal guard fired: record it as a failed row
      auto c = make_inequality(name, 1.0, 0.0, 0.0);
      c.reason = e.what();
      part.push_back(std::move(c));
    }
    for (auto& c : part) {
      c.provenance.family = spec;
      c.provenance.sample = index;
      c.provenance.sample_seed = seed;
      c.provenance.optimizer = cfg;
      rows.push_back(std::move(c));
    }
  }
  return rows;
}

std::string suite_id(const StateFamilySpec& spec, const std::vector<std::string>& relations) {
  std::ostringstream id;
  for (std::size_t i = 0; i < relations.size(); ++i) id << (i ? "+" : "") << relations[i];
  id << '/' << to_string(spec.family) << '/';
  for (std::size_t i = 0; i < spec.dims.size(); ++i) id << (i ? "x" : "") << spec.dims[i];
  id << "/seed" << spec.seed;
  return id.str();
}

}  // namespace

SuiteReport run_suite(const StateFamilySpec& spec, const std::vector<std::string>& relations, std::size_t samples,
                      const OptimizerConfig& cfg, std::size_t workers) {
  if (relations.empty()) throw std::invalid_argument("run_suite: no relations requested");
  const auto& known = known_relations();
  for (const auto& r : relations) {
    if (std::find(known.begin(), known.end(), r) == known.end()) {
      throw std::invalid_argument("unknown relation: " + r);
    }
  }
  spec.check();
  cfg.check();

  std::vector<std::vector<BoundCheck>> per_sample(samples);
  if (workers <= 1) {
    for (std::size_t i = 0; i < samples; ++i) per_sample[i] = run_sample(spec, relations, i, cfg);
  } else {
    // Strided assignment; each worker writes only its own slots.
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < samples; i += workers) per_sample[i] = run_sample(spec, relations, i, cfg);
      }));
    }
    for (auto& j : jobs) j.get();
  }

  SuiteReport rep;
  rep.suite_id = suite_id(spec, relations);
  rep.family = spec;
  rep.optimizer = cfg;
  rep.samples = samples;
  rep.relations = relations;
  for (auto& rows : per_sample) {
    for (auto& c : rows) {
      auto& s = rep.summary[c.relation];
      if (c.skipped) {
        ++s.skip;
      } else if (c.survey) {
        ++s.survey;
        if (!c.holds) ++s.survey_violations;
      } else if (c.holds) {
        ++s.pass;
      } else {
        ++s.fail;
      }
      rep.rows.push_back(std::move(c));
    }
  }
  return rep;
}

}  // namespace qcorr
