// Copyright 2026 The dplp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dplp/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dplp {
namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw std::invalid_argument(where + ": unknown key '" + item.key() +
                                  "'");
    }
  }
}

double to_finite(const json& v, const std::string& where) {
  if (!v.is_number()) {
    throw std::invalid_argument(where + ": expected a number");
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    throw std::invalid_argument(where + ": number must be finite");
  }
  return d;
}

Eigen::VectorXd to_vector(const json& v, const std::string& where) {
  if (!v.is_array()) {
    throw std::invalid_argument(where + ": expected an array");
  }
  Eigen::VectorXd out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = to_finite(v[i], where);
  }
  return out;
}

Eigen::MatrixXd to_matrix(const json& v, const std::string& where) {
  if (!v.is_array()) {
    throw std::invalid_argument(where + ": expected an array of rows");
  }
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  if (rows > 0) {
    if (!v[0].is_array()) {
      throw std::invalid_argument(where + ": expected an array of rows");
    }
    cols = v[0].size();
  }
  Eigen::MatrixXd out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].size() != cols) {
      throw std::invalid_argument(where + ": ragged rows");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          to_finite(v[i][j], where);
    }
  }
  return out;
}

int to_binary(const json& v, const std::string& where) {
  if (!v.is_number_integer()) {
    throw std::invalid_argument(where + ": mask entries must be 0 or 1");
  }
  const long long i = v.get<long long>();
  if (i != 0 && i != 1) {
    throw std::invalid_argument(where + ": mask entries must be 0 or 1");
  }
  return static_cast<int>(i);
}

Eigen::VectorXi to_mask_vector(const json& v, const std::string& where) {
  if (!v.is_array()) {
    throw std::invalid_argument(where + ": expected an array");
  }
  Eigen::VectorXi out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = to_binary(v[i], where);
  }
  return out;
}

Eigen::MatrixXi to_mask_matrix(const json& v, const std::string& where) {
  if (!v.is_array()) {
    throw std::invalid_argument(where + ": expected an array of rows");
  }
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  if (rows > 0) {
    if (!v[0].is_array()) {
      throw std::invalid_argument(where + ": expected an array of rows");
    }
    cols = v[0].size();
  }
  Eigen::MatrixXi out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!v[i].is_array() || v[i].size() != cols) {
      throw std::invalid_argument(where + ": ragged rows");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          to_binary(v[i][j], where);
    }
  }
  return out;
}

json from_vector(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json from_matrix(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

json from_mask_vector(const Eigen::VectorXi& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json from_mask_matrix(const Eigen::MatrixXi& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(row);
  }
  return out;
}

json parse_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError("cannot parse '" + path + "': " + e.what());
  }
}

// get<T> on a mistyped value raises a json exception; the schema contract
// promises invalid_argument for those.
template <typename Fn>
auto with_schema_errors(const std::string& where, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw std::invalid_argument(where + ": " + e.what());
  }
}

GridCell to_cell(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
      !v[1].is_number_integer()) {
    throw std::invalid_argument(where + ": expected [x, y] integers");
  }
  return GridCell{v[0].get<int>(), v[1].get<int>()};
}

GridworldConfig gridworld_from_json(const json& obj) {
  if (!obj.is_object()) {
    throw std::invalid_argument("grid: expected an object");
  }
  require_keys(obj,
               {"width", "height", "start", "goal", "hazards", "beta",
                "gamma", "f0", "A_sup", "b_inf", "reward_model",
                "goal_reward", "slip", "mask_mode", "discounted_hazard"},
               "grid");
  GridworldConfig g;
  if (obj.count("width")) g.width = obj["width"].get<int>();
  if (obj.count("height")) g.height = obj["height"].get<int>();
  if (obj.count("start")) g.start = to_cell(obj["start"], "grid.start");
  if (obj.count("goal")) g.goal = to_cell(obj["goal"], "grid.goal");
  if (obj.count("hazards")) {
    g.hazards.clear();
    for (const auto& h : obj["hazards"]) {
      g.hazards.push_back(to_cell(h, "grid.hazards"));
    }
  }
  if (obj.count("beta")) g.beta = to_finite(obj["beta"], "grid.beta");
  if (obj.count("gamma")) g.gamma = to_finite(obj["gamma"], "grid.gamma");
  if (obj.count("f0")) g.f0 = to_finite(obj["f0"], "grid.f0");
  if (obj.count("A_sup")) {
    g.hazard_sup = to_finite(obj["A_sup"], "grid.A_sup");
  }
  if (obj.count("b_inf")) {
    g.bound_inf = to_finite(obj["b_inf"], "grid.b_inf");
  }
  if (obj.count("reward_model")) {
    const std::string model = obj["reward_model"].get<std::string>();
    if (model != "goal") {
      throw std::invalid_argument("grid.reward_model: only 'goal' exists");
    }
  }
  if (obj.count("goal_reward")) {
    g.goal_reward = to_finite(obj["goal_reward"], "grid.goal_reward");
  }
  if (obj.count("slip")) g.slip = to_finite(obj["slip"], "grid.slip");
  if (obj.count("mask_mode")) {
    const std::string mode = obj["mask_mode"].get<std::string>();
    if (mode == "hazard_only") {
      g.mask_mode = HazardMaskMode::kHazardOnly;
    } else if (mode == "all_non_goal") {
      g.mask_mode = HazardMaskMode::kAllNonGoal;
    } else {
      throw std::invalid_argument("grid.mask_mode: unknown mode '" + mode +
                                  "'");
    }
  }
  if (obj.count("discounted_hazard")) {
    g.discounted_hazard = obj["discounted_hazard"].get<bool>();
  }
  return g;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path + "' for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw IoError("read failed for '" + path + "'");
  }
  return buf.str();
}

void write_text_file(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  out << text;
  out.flush();
  if (!out) {
    throw IoError("write failed for '" + path + "'");
  }
}

namespace {

InstanceFile read_instance_json(const json& doc) {
  if (!doc.is_object()) {
    throw std::invalid_argument("instance: expected a JSON object");
  }
  require_keys(doc, {"c", "A", "b", "A_eq", "b_eq", "sensitivity"},
               "instance");
  for (const char* key : {"c", "A", "b"}) {
    if (!doc.count(key)) {
      throw std::invalid_argument(std::string("instance: missing key '") +
                                  key + "'");
    }
  }
  if (doc.count("A_eq") != doc.count("b_eq")) {
    throw std::invalid_argument(
        "instance: A_eq and b_eq must be given together");
  }

  InstanceFile inst;
  inst.lp.c = to_vector(doc["c"], "instance.c");
  inst.lp.A = to_matrix(doc["A"], "instance.A");
  inst.lp.b = to_vector(doc["b"], "instance.b");
  if (doc.count("A_eq")) {
    inst.lp.A_eq = to_matrix(doc["A_eq"], "instance.A_eq");
    inst.lp.b_eq = to_vector(doc["b_eq"], "instance.b_eq");
  } else {
    inst.lp.A_eq = Eigen::MatrixXd::Zero(0, inst.lp.num_vars());
    inst.lp.b_eq = Eigen::VectorXd::Zero(0);
  }
  // Width of an empty inequality block is not recoverable from [] rows.
  if (inst.lp.A.rows() == 0) {
    inst.lp.A.resize(0, inst.lp.num_vars());
  }
  inst.lp.validate();

  if (doc.count("sensitivity")) {
    const json& s = doc["sensitivity"];
    if (!s.is_object()) {
      throw std::invalid_argument("instance.sensitivity: expected an object");
    }
    require_keys(s,
                 {"delta11_A", "delta1_b", "delta1_c", "mask_A", "mask_c",
                  "A_sup", "b_inf"},
                 "instance.sensitivity");
    for (const char* key : {"delta11_A", "delta1_b", "delta1_c", "mask_A",
                            "mask_c", "A_sup", "b_inf"}) {
      if (!s.count(key)) {
        throw std::invalid_argument(
            std::string("instance.sensitivity: missing key '") + key + "'");
      }
    }
    inst.has_profile = true;
    inst.profile.delta11_A = to_finite(s["delta11_A"], "sensitivity.delta11_A");
    inst.profile.delta1_b = to_finite(s["delta1_b"], "sensitivity.delta1_b");
    inst.profile.delta1_c = to_finite(s["delta1_c"], "sensitivity.delta1_c");
    inst.profile.mask_A = to_mask_matrix(s["mask_A"], "sensitivity.mask_A");
    inst.profile.mask_c = to_mask_vector(s["mask_c"], "sensitivity.mask_c");
    inst.profile.A_sup = to_matrix(s["A_sup"], "sensitivity.A_sup");
    inst.profile.b_inf = to_vector(s["b_inf"], "sensitivity.b_inf");
    if (inst.profile.mask_A.rows() == 0) {
      inst.profile.mask_A.resize(0, inst.lp.num_vars());
    }
    if (inst.profile.A_sup.rows() == 0) {
      inst.profile.A_sup.resize(0, inst.lp.num_vars());
    }
    const auto issues = validate_profile(inst.lp, inst.profile);
    if (!issues.empty()) {
      std::string msg = "instance.sensitivity:";
      for (const auto& issue : issues) msg += " " + issue + ";";
      throw std::invalid_argument(msg);
    }
  }
  return inst;
}

}  // namespace

InstanceFile read_instance_file(const std::string& path) {
  const json doc = parse_file(path);
  return with_schema_errors("instance",
                            [&doc] { return read_instance_json(doc); });
}

void write_instance_file(const InstanceFile& inst, const std::string& path) {
  json doc;
  doc["c"] = from_vector(inst.lp.c);
  doc["A"] = from_matrix(inst.lp.A);
  doc["b"] = from_vector(inst.lp.b);
  if (inst.lp.num_eq() > 0) {
    doc["A_eq"] = from_matrix(inst.lp.A_eq);
    doc["b_eq"] = from_vector(inst.lp.b_eq);
  }
  if (inst.has_profile) {
    json s;
    s["delta11_A"] = inst.profile.delta11_A;
    s["delta1_b"] = inst.profile.delta1_b;
    s["delta1_c"] = inst.profile.delta1_c;
    s["mask_A"] = from_mask_matrix(inst.profile.mask_A);
    s["mask_c"] = from_mask_vector(inst.profile.mask_c);
    s["A_sup"] = from_matrix(inst.profile.A_sup);
    s["b_inf"] = from_vector(inst.profile.b_inf);
    doc["sensitivity"] = s;
  }
  write_text_file(doc.dump(2) + "\n", path);
}

std::string solve_result_to_json(const SolveResult& result) {
  json doc;
  doc["status"] = to_string(result.status);
  doc["x"] = from_vector(result.x);
  doc["mu"] = from_vector(result.mu);
  doc["nu"] = from_vector(result.nu);
  doc["objective"] = result.objective;
  return doc.dump(2) + "\n";
}

std::string privatized_to_json(const PrivatizedProgram& priv) {
  json doc;
  doc["c"] = from_vector(priv.lp_tilde.c);
  doc["A"] = from_matrix(priv.lp_tilde.A);
  doc["b"] = from_vector(priv.lp_tilde.b);
  if (priv.lp_tilde.num_eq() > 0) {
    doc["A_eq"] = from_matrix(priv.lp_tilde.A_eq);
    doc["b_eq"] = from_vector(priv.lp_tilde.b_eq);
  }
  doc["noise_A"] = from_matrix(priv.noise_A);
  doc["noise_b"] = from_vector(priv.noise_b);
  doc["noise_c"] = from_vector(priv.noise_c);
  doc["clamped_A"] = from_mask_matrix(priv.clamped_A);
  doc["clamped_b"] = from_mask_vector(priv.clamped_b);
  doc["case_one"] = priv.case_one;
  doc["s_A"] = priv.s_A;
  doc["s_b"] = priv.s_b;
  doc["sigma_A"] = priv.sigma_A;
  doc["sigma_b"] = priv.sigma_b;
  doc["sigma_c"] = priv.sigma_c;
  doc["eps_spent"] = priv.eps_spent;
  doc["delta_spent"] = priv.delta_spent;
  doc["variant"] =
      priv.variant == SupportVariant::kLemma ? "lemma" : "algorithm1";
  doc["components"] = {{"A", priv.components.A},
                       {"b", priv.components.b},
                       {"c", priv.components.c}};
  return doc.dump(2) + "\n";
}

std::string accuracy_report_to_json(const AccuracyCliReport& report) {
  json doc;
  doc["rho"] = report.rho;
  doc["case_one_fraction"] = report.case_one_fraction;
  doc["empirical_subopt_mean"] = report.empirical_subopt_mean;
  doc["empirical_subopt_stderr"] = report.empirical_subopt_stderr;
  doc["hoffman_lower_bound"] = report.hoffman_lower_bound;
  doc["concentration"] = {{"t", report.t},
                          {"threshold", report.threshold},
                          {"exceedance", report.exceedance}};
  return doc.dump(2) + "\n";
}

namespace {

SweepConfig read_sweep_config_json(const json& doc) {
  if (!doc.is_object()) {
    throw std::invalid_argument("config: expected a JSON object");
  }
  require_keys(doc,
               {"kind", "mode", "N", "M", "eps", "delta", "alpha_A",
                "alpha_b", "alpha_c", "eps_grid", "size_grid", "alpha_c_grid",
                "samples", "master_seed", "delta11_A", "delta1_b", "delta1_c",
                "b_inf_drop", "fresh_instance", "debug_unclamped", "variant",
                "grid", "cmdp_delta11_A", "cmdp_delta1_b"},
               "config");
  SweepConfig cfg;
  if (doc.count("kind")) {
    const std::string kind = doc["kind"].get<std::string>();
    if (kind == "ad_eps") {
      cfg.kind = SweepKind::kAdEps;
    } else if (kind == "ad_size") {
      cfg.kind = SweepKind::kAdSize;
    } else if (kind == "budget") {
      cfg.kind = SweepKind::kBudget;
    } else if (kind == "cmdp") {
      cfg.kind = SweepKind::kCmdp;
    } else {
      throw std::invalid_argument("config.kind: unknown kind '" + kind + "'");
    }
  }
  if (doc.count("mode")) {
    const std::string mode = doc["mode"].get<std::string>();
    if (mode == "full") {
      cfg.mode = PrivacyMode::kFull;
    } else if (mode == "partial_ac") {
      cfg.mode = PrivacyMode::kPartialAc;
    } else if (mode == "partial_b") {
      cfg.mode = PrivacyMode::kPartialB;
    } else {
      throw std::invalid_argument("config.mode: unknown mode '" + mode + "'");
    }
  }
  if (doc.count("N")) cfg.N = doc["N"].get<int>();
  if (doc.count("M")) cfg.M = doc["M"].get<int>();
  if (doc.count("eps")) cfg.eps = to_finite(doc["eps"], "config.eps");
  if (doc.count("delta")) cfg.delta = to_finite(doc["delta"], "config.delta");
  if (doc.count("alpha_A")) {
    cfg.alpha_A = to_finite(doc["alpha_A"], "config.alpha_A");
  }
  if (doc.count("alpha_b")) {
    cfg.alpha_b = to_finite(doc["alpha_b"], "config.alpha_b");
  }
  if (doc.count("alpha_c")) {
    cfg.alpha_c = to_finite(doc["alpha_c"], "config.alpha_c");
  }
  if (doc.count("eps_grid")) {
    cfg.eps_grid.clear();
    for (const auto& v : doc["eps_grid"]) {
      cfg.eps_grid.push_back(to_finite(v, "config.eps_grid"));
    }
  }
  if (doc.count("size_grid")) {
    cfg.size_grid.clear();
    for (const auto& v : doc["size_grid"]) {
      if (!v.is_number_integer()) {
        throw std::invalid_argument("config.size_grid: expected integers");
      }
      cfg.size_grid.push_back(v.get<int>());
    }
  }
  if (doc.count("alpha_c_grid")) {
    cfg.alpha_c_grid.clear();
    for (const auto& v : doc["alpha_c_grid"]) {
      cfg.alpha_c_grid.push_back(to_finite(v, "config.alpha_c_grid"));
    }
  }
  if (doc.count("samples")) cfg.samples = doc["samples"].get<int>();
  if (doc.count("master_seed")) {
    cfg.master_seed = doc["master_seed"].get<std::uint64_t>();
  }
  if (doc.count("delta11_A")) {
    cfg.delta11_A = to_finite(doc["delta11_A"], "config.delta11_A");
  }
  if (doc.count("delta1_b")) {
    cfg.delta1_b = to_finite(doc["delta1_b"], "config.delta1_b");
  }
  if (doc.count("delta1_c")) {
    cfg.delta1_c = to_finite(doc["delta1_c"], "config.delta1_c");
  }
  if (doc.count("b_inf_drop")) {
    cfg.b_inf_drop = to_finite(doc["b_inf_drop"], "config.b_inf_drop");
  }
  if (doc.count("fresh_instance")) {
    cfg.fresh_instance = doc["fresh_instance"].get<bool>();
  }
  if (doc.count("debug_unclamped")) {
    cfg.debug_unclamped = doc["debug_unclamped"].get<bool>();
  }
  if (doc.count("variant")) {
    const std::string variant = doc["variant"].get<std::string>();
    if (variant == "lemma") {
      cfg.variant = SupportVariant::kLemma;
    } else if (variant == "algorithm1") {
      cfg.variant = SupportVariant::kAlgorithm1;
    } else {
      throw std::invalid_argument("config.variant: unknown variant '" +
                                  variant + "'");
    }
  }
  if (doc.count("grid")) cfg.grid = gridworld_from_json(doc["grid"]);
  if (doc.count("cmdp_delta11_A")) {
    cfg.cmdp_delta11_A = to_finite(doc["cmdp_delta11_A"], "config.cmdp_delta11_A");
  }
  if (doc.count("cmdp_delta1_b")) {
    cfg.cmdp_delta1_b = to_finite(doc["cmdp_delta1_b"], "config.cmdp_delta1_b");
  }
  return cfg;
}

}  // namespace

SweepConfig read_sweep_config_file(const std::string& path) {
  const json doc = parse_file(path);
  return with_schema_errors("config",
                            [&doc] { return read_sweep_config_json(doc); });
}

}  // namespace dplp
