// Copyright 2026 The randcert Authors
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
#include "randcert/cli.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include "randcert/adversary.hpp"
#include "randcert/belltest.hpp"
#include "randcert/numfmt.hpp"
#include "randcert/qjson.hpp"
#include "randcert/tomography.hpp"

namespace randcert {

using nlohmann::ordered_json;

// ---------------------------------------------------------------- config

Tolerances::Tolerances()
    : values_{{"attack", 1e-10},       {"bell", 1e-10},
              {"distribution", 1e-12}, {"entropy", 1e-9},
              {"povm_slope", 10.0},    {"spectral", 1e-10}} {}

double Tolerances::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw UsageError("unknown tolerance key: " + key);
  return it->second;
}

void Tolerances::set(const std::string& key, double value) {
  auto it = values_.find(key);
  if (it == values_.end()) throw UsageError("unknown tolerance key: " + key);
  if (!(value > 0.0) || !std::isfinite(value))
    throw UsageError("tolerance " + key + " must be positive");
  it->second = value;
}

void Tolerances::set_from_string(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw UsageError("expected KEY=VAL, got '" + assignment + "'");
  double v = 0.0;
  try {
    v = parse_double(assignment.substr(eq + 1));
  } catch (const std::invalid_argument&) {
    throw UsageError("bad tolerance value in '" + assignment + "'");
  }
  set(assignment.substr(0, eq), v);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double number_or_usage(const std::string& key, const std::string& text) {
  try {
    return parse_double(trim(text));
  } catch (const std::invalid_argument&) {
    throw UsageError("bad number for " + key + ": '" + text + "'");
  }
}

std::uint64_t uint_or_usage(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
    throw UsageError("bad integer for " + key + ": '" + text + "'");
  try {
    return std::stoull(t);
  } catch (const std::exception&) {
    throw UsageError("bad integer for " + key + ": '" + text + "'");
  }
}

}  // namespace

void apply_config_text(RunConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(lineno) +
                       ": expected key=value");
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    if (key == "theta") {
      cfg.thetas.clear();
      std::istringstream parts(val);
      std::string p;
      while (std::getline(parts, p, ','))
        cfg.thetas.push_back(number_or_usage(key, p));
    } else if (key == "theta-grid") {
      cfg.theta_grid = uint_or_usage(key, val);
    } else if (key == "epsilon") {
      cfg.epsilon = number_or_usage(key, val);
    } else if (key == "scenario") {
      cfg.scenario = val;
    } else if (key == "seed") {
      cfg.seed = uint_or_usage(key, val);
    } else if (key.rfind("tol.", 0) == 0) {
      cfg.tol.set(key.substr(4), number_or_usage(key, val));
    } else if (key == "out") {
      cfg.out = val;
    } else if (key == "format") {
      cfg.format = val;
    } else {
      throw UsageError("config line " + std::to_string(lineno) +
                       ": unknown key '" + key + "'");
    }
  }
}

std::vector<double> resolve_thetas(const RunConfig& cfg) {
  std::vector<double> out;
  for (double t : cfg.thetas) {
    try {
      out.push_back(Angle(t).radians());
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }
  if (cfg.theta_grid > 0)
    for (const Angle& a : theta_grid(cfg.theta_grid))
      out.push_back(a.radians());
  if (out.empty()) out.push_back(std::numbers::pi / 2);
  return out;
}

namespace {

void check_common(const RunConfig& cfg) {
  if (cfg.format != "json" && cfg.format != "csv")
    throw UsageError("--format must be json or csv, got '" + cfg.format + "'");
  if (!(cfg.epsilon > 0.0) || !(cfg.epsilon < 1.0))
    throw UsageError("--epsilon must lie in (0, 1)");
}

ordered_json header(const std::string& command, const RunConfig& cfg) {
  ordered_json j;
  j["schema"] = 1;
  j["command"] = command;
  j["tolerances"] = cfg.tol.values();
  return j;
}

ordered_json table_json(const Eigen::MatrixXd& t) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index a = 0; a < t.rows(); ++a) {
    ordered_json r = ordered_json::array();
    for (Eigen::Index b = 0; b < t.cols(); ++b) r.push_back(t(a, b));
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string csv_join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ",";
    out += cells[i];
  }
  return out + "\n";
}

std::string fmt(double x) { return format_double(x); }

std::string theta_tag(double theta) { return "theta=" + fmt(theta); }

CommandResult finish(ordered_json&& report, std::string csv,
                     const RunConfig& cfg, std::vector<std::string> failures) {
  CommandResult r;
  r.failures = std::move(failures);
  r.exit_code = r.failures.empty() ? 0 : 1;
  if (cfg.format == "csv") {
    r.output = std::move(csv);
  } else {
    report["failures"] = r.failures;
    report["pass"] = r.failures.empty();
    r.output = report.dump(2) + "\n";
  }
  return r;
}

// Everything the selftest checks at one angle.
struct SelftestPoint {
  BellValues bell;
  SpectralReport spectral;
  bool bell_ok = false;
  bool spectral_ok = false;
};

SelftestPoint selftest_point(double theta, const Tolerances& tol) {
  SelftestPoint p;
  const Angle th(theta);
  p.bell = eval_bell(ideal_scenario(th));
  p.spectral = spectral_selftest(p.bell.beta);
  p.bell_ok = *std::max_element(p.bell.residuals.begin(),
                                p.bell.residuals.end()) <= tol.get("bell");
  const double s = tol.get("spectral");
  p.spectral_ok = p.spectral.eigenvalue_residual <= s &&
                  1.0 - p.spectral.fidelity <= s &&
                  p.spectral.spectral_form_residual <= s;
  return p;
}

}  // namespace

// -------------------------------------------------------------- selftest

CommandResult cmd_selftest(const RunConfig& cfg) {
  check_common(cfg);
  const auto thetas = resolve_thetas(cfg);
  ordered_json report = header("selftest", cfg);
  ordered_json results = ordered_json::array();
  std::vector<std::string> failures;
  std::string csv =
      "theta,beta,I,J,S,res_I,res_J,res_S,spectral_residual,"
      "fidelity_defect,status\n";
  for (double t : thetas) {
    const SelftestPoint p = selftest_point(t, cfg.tol);
    const auto& v = p.bell;
    const auto& sp = p.spectral;
    const bool ok = p.bell_ok && p.spectral_ok;
    if (!ok) failures.push_back(theta_tag(t));

    ordered_json r;
    r["theta"] = t;
    r["beta"] = v.beta;
    r["I"] = v.I;
    r["J"] = v.J;
    r["S"] = v.S;
    r["ideals"] = {{"I", v.ideal_I}, {"J", v.ideal_J}, {"S", v.ideal_S}};
    r["residuals"] = v.residuals;
    r["spectrum"] = std::vector<double>(sp.eigenvalues.data(),
                                        sp.eigenvalues.data() + 4);
    r["fidelity"] = sp.fidelity;
    r["spectral_form_residual"] = sp.spectral_form_residual;
    r["cos_half_mu"] = {{"closed_form", sp.cos_half_mu_closed},
                        {"numeric", sp.cos_half_mu_numeric}};
    r["pass"] = ok;
    results.push_back(std::move(r));

    csv += csv_join({fmt(t), fmt(v.beta), fmt(v.I), fmt(v.J), fmt(v.S),
                     fmt(v.residuals[0]), fmt(v.residuals[1]),
                     fmt(v.residuals[2]),
                     fmt(std::max(sp.eigenvalue_residual,
                                  sp.spectral_form_residual)),
                     fmt(1.0 - sp.fidelity), ok ? "ok" : "fail"});
  }
  report["results"] = std::move(results);
  return finish(std::move(report), std::move(csv), cfg, std::move(failures));
}

// --------------------------------------------------------------- certify

namespace {

struct Certificate {
  std::string scenario;
  double theta = 0;
  std::array<double, 3> bell_residuals{};
  std::vector<double> distribution;
  std::size_t rows = 0, cols = 0;
  double min_entropy_bits = 0;
  double target_bits = 0;
  std::string bound_type;
  double deviation = 0;        // scenario-specific, see below
  double deviation_bound = 0;
  bool pass = false;
};

std::vector<double> flatten(const Eigen::MatrixXd& t) {
  std::vector<double> out;
  for (Eigen::Index a = 0; a < t.rows(); ++a)
    for (Eigen::Index b = 0; b < t.cols(); ++b) out.push_back(t(a, b));
  return out;
}

double max_dev_from(const std::vector<double>& d, double target) {
  double m = 0.0;
  for (double x : d) m = std::max(m, std::abs(x - target));
  return m;
}

Certificate certify_local_povm(Angle th, const Tolerances& tol) {
  Certificate c;
  const CMat rho_a = partial_trace(psi_theta(th).rho(), SubsystemShape({2, 2}),
                                   {0});
  c.distribution = outcome_probabilities(adjusted_tetrahedral(th), rho_a);
  c.rows = 1;
  c.cols = c.distribution.size();
  c.min_entropy_bits = min_entropy(c.distribution);
  c.target_bits = 2.0;
  c.bound_type = "attained";
  c.deviation = max_dev_from(c.distribution, 0.25);
  c.deviation_bound = tol.get("distribution");
  c.pass = c.deviation <= c.deviation_bound &&
           std::abs(c.min_entropy_bits - 2.0) <= tol.get("entropy");
  return c;
}

Certificate certify_global_projective(Angle th, const Tolerances& tol) {
  Certificate c;
  const auto pure = projective_joint_distribution(th, AncillaRealization::Pure);
  const auto mixed =
      projective_joint_distribution(th, AncillaRealization::Mixed);
  c.distribution.assign(pure.begin(), pure.end());
  c.rows = 2;
  c.cols = 2;
  c.min_entropy_bits = min_entropy(c.distribution);
  c.target_bits = 2.0;
  c.bound_type = "attained";
  c.deviation = std::max(
      max_dev_from(c.distribution, 0.25),
      max_dev_from(std::vector<double>(mixed.begin(), mixed.end()), 0.25));
  c.deviation_bound = tol.get("distribution");
  c.pass = c.deviation <= c.deviation_bound &&
           std::abs(c.min_entropy_bits - 2.0) <= tol.get("entropy");
  return c;
}

Certificate certify_global_povm(Angle th, double epsilon,
                                const Tolerances& tol) {
  Certificate c;
  const JointTable j =
      ideal_joint(near_y_tetrahedral(epsilon), modified_mercedes(th), th);
  c.distribution = flatten(j);
  c.rows = static_cast<std::size_t>(j.rows());
  c.cols = static_cast<std::size_t>(j.cols());
  c.min_entropy_bits = min_entropy(j);
  c.target_bits = std::log2(12.0);
  c.bound_type = "lower_witness";
  c.deviation = j.maxCoeff() - 1.0 / 12.0;
  c.deviation_bound = tol.get("povm_slope") * epsilon;
  c.pass = c.deviation <= c.deviation_bound;
  return c;
}

ordered_json certificate_json(const Certificate& c, double epsilon) {
  ordered_json r;
  r["scenario"] = c.scenario;
  r["theta"] = c.theta;
  r["bell_residuals"] = c.bell_residuals;
  r["distribution"] = c.distribution;
  r["distribution_shape"] = {c.rows, c.cols};
  r["min_entropy_bits"] = c.min_entropy_bits;
  r["target_bits"] = c.target_bits;
  r["bound_type"] = c.bound_type;
  if (c.scenario == "global_povm") {
    r["epsilon"] = epsilon;
    r["max_entry_excess"] = c.deviation;
    r["max_entry_excess_bound"] = c.deviation_bound;
  } else {
    r["max_deviation_from_uniform"] = c.deviation;
    r["deviation_bound"] = c.deviation_bound;
  }
  r["pass"] = c.pass;
  return r;
}

Certificate certify_one(const std::string& scenario, double theta,
                        double epsilon, const Tolerances& tol) {
  const Angle th(theta);
  Certificate c;
  if (scenario == "local_povm")
    c = certify_local_povm(th, tol);
  else if (scenario == "global_projective")
    c = certify_global_projective(th, tol);
  else
    c = certify_global_povm(th, epsilon, tol);
  c.scenario = scenario;
  c.theta = theta;
  c.bell_residuals = eval_bell(ideal_scenario(th)).residuals;
  if (*std::max_element(c.bell_residuals.begin(), c.bell_residuals.end()) >
      tol.get("bell"))
    c.pass = false;
  return c;
}

}  // namespace

CommandResult cmd_certify(const RunConfig& cfg) {
  check_common(cfg);
  const std::string scenario = cfg.scenario.empty() ? "global_povm" : cfg.scenario;
  if (scenario != "local_povm" && scenario != "global_projective" &&
      scenario != "global_povm")
    throw UsageError("certify: unknown scenario '" + scenario +
                     "' (local_povm, global_projective, global_povm)");
  const auto thetas = resolve_thetas(cfg);
  ordered_json report = header("certify", cfg);
  report["scenario"] = scenario;
  ordered_json results = ordered_json::array();
  std::vector<std::string> failures;
  std::string csv =
      "scenario,theta,min_entropy_bits,target_bits,bound_type,deviation,"
      "deviation_bound,status\n";
  for (double t : thetas) {
    const Certificate c = certify_one(scenario, t, cfg.epsilon, cfg.tol);
    if (!c.pass) failures.push_back(theta_tag(t));
    results.push_back(certificate_json(c, cfg.epsilon));
    csv += csv_join({scenario, fmt(t), fmt(c.min_entropy_bits),
                     fmt(c.target_bits), c.bound_type, fmt(c.deviation),
                     fmt(c.deviation_bound), c.pass ? "ok" : "fail"});
  }
  report["results"] = std::move(results);
  return finish(std::move(report), std::move(csv), cfg, std::move(failures));
}

// ---------------------------------------------------------------- attack

CommandResult cmd_attack(const RunConfig& cfg) {
  check_common(cfg);
  const std::string scenario =
      cfg.scenario.empty() ? "tetrahedral" : cfg.scenario;
  if (scenario != "tetrahedral" && scenario != "near_y" &&
      scenario != "random")
    throw UsageError("attack: unknown scenario '" + scenario +
                     "' (tetrahedral, near_y, random)");
  const auto thetas = resolve_thetas(cfg);
  const double tol = cfg.tol.get("attack");
  const double cap = randomness_cap();
  std::mt19937_64 rng(cfg.seed);

  ordered_json report = header("attack", cfg);
  report["scenario"] = scenario;
  report["seed"] = cfg.seed;
  report["randomness_cap"] = cap;
  report["bound_type"] = "upper_cap";
  ordered_json results = ordered_json::array();
  std::vector<std::string> failures;
  std::string csv =
      "theta,target_a,target_b,guessing_prob,certified_bits,randomness_cap,"
      "average_deviation,min_conditional,brute_force_residual,status\n";

  for (double t : thetas) {
    const Angle th(t);
    Povm alice, bob;
    if (scenario == "tetrahedral") {
      alice = bob = adjusted_tetrahedral(th);
    } else if (scenario == "near_y") {
      alice = bob = near_y_tetrahedral(cfg.epsilon);
    } else {
      alice = random_extremal_qubit_povm(4, rng);
      bob = random_extremal_qubit_povm(4, rng);
    }
    ordered_json r;
    r["theta"] = t;
    std::optional<AttackModel> attack;
    try {
      attack = build_attack(alice, bob, th, cfg.seed);
    } catch (const AttackDegenerate& e) {
      r["degenerate"] = true;
      r["reason"] = e.what();
      results.push_back(std::move(r));
      csv += csv_join({fmt(t), "", "", "", "", fmt(cap), "", "", "",
                       "degenerate"});
      continue;
    }
    const ConditionalJoint cj = conditional_joint(*attack);
    const JointTable ideal = ideal_joint(alice, bob, th);
    const double avg_dev = (cj.average - ideal).cwiseAbs().maxCoeff();
    const double min_cond = std::min(cj.plus.minCoeff(), cj.minus.minCoeff());
    const double brute =
        std::max((brute_force_joint(*attack, Branch::Plus) - cj.plus)
                     .cwiseAbs()
                     .maxCoeff(),
                 (brute_force_joint(*attack, Branch::Minus) - cj.minus)
                     .cwiseAbs()
                     .maxCoeff());
    const bool ok = avg_dev <= tol && min_cond <= tol && brute <= tol;
    if (!ok) failures.push_back(theta_tag(t));

    r["degenerate"] = false;
    r["lambda"] = vector_entries_json(attack->lambda);
    r["mu"] = vector_entries_json(attack->mu);
    r["target_pair"] = {attack->target_pair.first, attack->target_pair.second};
    r["P_plus"] = table_json(cj.plus);
    r["P_minus"] = table_json(cj.minus);
    r["guessing_prob"] = cj.guessing_prob;
    r["certified_bits"] = cj.certified_bits;
    r["randomness_cap"] = cap;
    r["average_deviation"] = avg_dev;
    r["min_conditional"] = min_cond;
    r["max_conditional_minus"] = cj.minus.maxCoeff();
    r["brute_force_residual"] = brute;
    r["pass"] = ok;
    results.push_back(std::move(r));

    csv += csv_join({fmt(t), std::to_string(attack->target_pair.first),
                     std::to_string(attack->target_pair.second),
                     fmt(cj.guessing_prob), fmt(cj.certified_bits), fmt(cap),
                     fmt(avg_dev), fmt(min_cond), fmt(brute),
                     ok ? "ok" : "fail"});
  }
  report["results"] = std::move(results);
  return finish(std::move(report), std::move(csv), cfg, std::move(failures));
}

// ----------------------------------------------------------------- sweep

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols{
      "theta", "beta",  "I",           "J",
      "S",     "res_I", "res_J",       "res_S",
      "h_local_povm", "h_global_projective", "h_global_povm", "status"};
  return cols;
}

namespace {

struct SweepRow {
  double theta = 0;
  BellValues bell;
  double h_local = 0, h_proj = 0, h_povm = 0;
  std::vector<std::string> problems;
};

SweepRow sweep_row(double theta, double epsilon, const Tolerances& tol) {
  SweepRow row;
  row.theta = theta;
  try {
    const SelftestPoint p = selftest_point(theta, tol);
    row.bell = p.bell;
    if (!p.bell_ok) row.problems.push_back("bell");
    if (!p.spectral_ok) row.problems.push_back("spectral");
    const Certificate lp = certify_one("local_povm", theta, epsilon, tol);
    const Certificate gp = certify_one("global_projective", theta, epsilon, tol);
    const Certificate gv = certify_one("global_povm", theta, epsilon, tol);
    row.h_local = lp.min_entropy_bits;
    row.h_proj = gp.min_entropy_bits;
    row.h_povm = gv.min_entropy_bits;
    if (!lp.pass) row.problems.push_back("local_povm");
    if (!gp.pass) row.problems.push_back("global_projective");
    if (!gv.pass) row.problems.push_back("global_povm");
  } catch (const std::exception& e) {
    row.problems.push_back(std::string("error: ") + e.what());
  }
  return row;
}

}  // namespace

CommandResult cmd_sweep(const RunConfig& cfg) {
  check_common(cfg);
  RunConfig local = cfg;
  if (local.thetas.empty() && local.theta_grid == 0) local.theta_grid = 20;
  const auto thetas = resolve_thetas(local);

  std::vector<SweepRow> rows(thetas.size());
  const std::size_t workers = std::max<std::size_t>(
      1, std::min<std::size_t>(std::thread::hardware_concurrency(),
                               thetas.size()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < thetas.size(); i += workers)
        rows[i] = sweep_row(thetas[i], cfg.epsilon, cfg.tol);
    }));
  for (auto& j : jobs) j.get();
  // Output is ordered by theta whatever the completion order.
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) {
                     return a.theta < b.theta;
                   });

  std::vector<std::string> failures;
  std::string csv = csv_join(sweep_columns());
  ordered_json report = header("sweep", cfg);
  report["epsilon"] = cfg.epsilon;
  report["columns"] = sweep_columns();
  ordered_json jrows = ordered_json::array();
  for (const auto& r : rows) {
    std::string status = "ok";
    if (!r.problems.empty()) {
      status = "fail";
      for (const auto& p : r.problems) status += ":" + p;
      failures.push_back(theta_tag(r.theta));
    }
    const auto& v = r.bell;
    csv += csv_join({fmt(r.theta), fmt(v.beta), fmt(v.I), fmt(v.J), fmt(v.S),
                     fmt(v.residuals[0]), fmt(v.residuals[1]),
                     fmt(v.residuals[2]), fmt(r.h_local), fmt(r.h_proj),
                     fmt(r.h_povm), status});
    jrows.push_back({r.theta, v.beta, v.I, v.J, v.S, v.residuals[0],
                     v.residuals[1], v.residuals[2], r.h_local, r.h_proj,
                     r.h_povm, status});
  }
  report["rows"] = std::move(jrows);
  return finish(std::move(report), std::move(csv), cfg, std::move(failures));
}

}  // namespace randcert
