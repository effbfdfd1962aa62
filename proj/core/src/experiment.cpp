// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors

#include "risuav/experiment.hpp"

#include <cmath>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "risuav/common.hpp"
#include "risuav/errors.hpp"

namespace risuav::experiment {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw config_error(path, msg);
}

std::string join_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

void check_keys(const json& o, const std::string& base,
                std::initializer_list<const char*> allowed) {
  for (auto it = o.begin(); it != o.end(); ++it) {
    bool known = false;
    for (const char* k : allowed) {
      if (it.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) fail(join_path(base, it.key()), "unknown field");
  }
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

double req_number(const json& o, const std::string& base, const char* key) {
  if (!o.contains(key)) fail(join_path(base, key), "required field missing");
  return as_number(o.at(key), join_path(base, key));
}

double opt_number(const json& o, const std::string& base, const char* key, double def) {
  if (!o.contains(key)) return def;
  return as_number(o.at(key), join_path(base, key));
}

int opt_integer(const json& o, const std::string& base, const char* key, int def) {
  if (!o.contains(key)) return def;
  const auto& v = o.at(key);
  if (!v.is_number_integer()) fail(join_path(base, key), "expected an integer");
  return v.get<int>();
}

std::string opt_string(const json& o, const std::string& base, const char* key,
                       const std::string& def) {
  if (!o.contains(key)) return def;
  const auto& v = o.at(key);
  if (!v.is_string()) fail(join_path(base, key), "expected a string");
  return v.get<std::string>();
}

metrics::Modulation parse_modulation(const json& v, const std::string& path) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "bpsk") return metrics::Modulation::bpsk();
    fail(path, "unknown modulation preset '" + s + "'");
  }
  if (!v.is_object()) fail(path, "expected a string preset or an object");
  check_keys(v, path, {"preset", "m", "p", "q", "label"});
  if (v.contains("preset")) {
    const auto preset = opt_string(v, path, "preset", "bpsk");
    if (preset == "bpsk") return metrics::Modulation::bpsk();
    const int m = opt_integer(v, path, "m", 0);
    if (m < 2) fail(join_path(path, "m"), "M-ary preset needs m >= 2");
    if (preset == "mpsk") return metrics::Modulation::mpsk(m);
    if (preset == "mpsk-sin2pi") return metrics::Modulation::mpsk_sin2pi(m);
    fail(join_path(path, "preset"), "unknown preset '" + preset + "'");
  }
  metrics::Modulation mod;
  mod.p = req_number(v, path, "p");
  mod.q = req_number(v, path, "q");
  mod.label = opt_string(v, path, "label", "custom");
  if (!(mod.p > 0.0) || !(mod.q > 0.0)) fail(path, "p and q must be positive");
  return mod;
}

RisEntry parse_ris(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  check_keys(v, path, {"n_elements", "m1", "m2", "omega1", "omega2", "d1_m", "d2_m",
                       "g1_dbi", "g2_dbi", "efficiency", "path_loss"});
  RisEntry e;
  if (!v.contains("n_elements")) fail(join_path(path, "n_elements"), "required field missing");
  e.spec.n_elements = opt_integer(v, path, "n_elements", 1);
  if (e.spec.n_elements < 1) fail(join_path(path, "n_elements"), "must be >= 1");
  e.spec.m1 = opt_number(v, path, "m1", 1.0);
  e.spec.m2 = opt_number(v, path, "m2", 1.0);
  if (!(e.spec.m1 >= 0.5)) fail(join_path(path, "m1"), "Nakagami shape must be >= 0.5");
  if (!(e.spec.m2 >= 0.5)) fail(join_path(path, "m2"), "Nakagami shape must be >= 0.5");
  e.spec.omega1 = opt_number(v, path, "omega1", 1.0);
  e.spec.omega2 = opt_number(v, path, "omega2", 1.0);
  if (!(e.spec.omega1 > 0.0)) fail(join_path(path, "omega1"), "must be positive");
  if (!(e.spec.omega2 > 0.0)) fail(join_path(path, "omega2"), "must be positive");
  e.spec.g1_dbi = opt_number(v, path, "g1_dbi", 5.0);
  e.spec.g2_dbi = opt_number(v, path, "g2_dbi", 5.0);
  e.spec.efficiency = opt_number(v, path, "efficiency", 1.0);
  if (!(e.spec.efficiency > 0.0) || e.spec.efficiency > 1.0)
    fail(join_path(path, "efficiency"), "must lie in (0, 1]");
  e.has_distances = v.contains("d1_m") || v.contains("d2_m");
  if (e.has_distances) {
    e.spec.d1_m = req_number(v, path, "d1_m");
    e.spec.d2_m = req_number(v, path, "d2_m");
    if (!(e.spec.d1_m > 0.0)) fail(join_path(path, "d1_m"), "must be positive");
    if (!(e.spec.d2_m > 0.0)) fail(join_path(path, "d2_m"), "must be positive");
  }
  if (v.contains("path_loss")) {
    const double pl = req_number(v, path, "path_loss");
    if (!(pl > 0.0)) fail(join_path(path, "path_loss"), "must be positive");
    e.path_loss_override = pl;
  }
  return e;
}

channel::Scene parse_scene(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  check_keys(v, path, {"dest_distance_m", "ris_baseline_m", "ris_offsets_m", "uav_x_m",
                       "uav_height_m"});
  channel::Scene s;
  s.dest_distance_m = opt_number(v, path, "dest_distance_m", 100.0);
  s.ris_baseline_m = opt_number(v, path, "ris_baseline_m", 40.0);
  s.uav_x_m = req_number(v, path, "uav_x_m");
  s.uav_height_m = req_number(v, path, "uav_height_m");
  if (v.contains("ris_offsets_m")) {
    const auto& arr = v.at("ris_offsets_m");
    if (!arr.is_array() || arr.empty())
      fail(join_path(path, "ris_offsets_m"), "expected a non-empty array");
    s.ris_offsets_m.clear();
    for (std::size_t i = 0; i < arr.size(); ++i)
      s.ris_offsets_m.push_back(
          as_number(arr[i], join_path(path, "ris_offsets_m[" + std::to_string(i) + "]")));
  }
  if (!(s.dest_distance_m > 0.0)) fail(join_path(path, "dest_distance_m"), "must be positive");
  if (!(s.uav_height_m > 0.0)) fail(join_path(path, "uav_height_m"), "must be positive");
  return s;
}

EnvironmentEntry parse_environment(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  check_keys(v, path, {"height_m", "horizontal_m", "a1", "b1", "a2", "b2",
                       "excess_loss_db", "k0_mode", "k0_db", "loss_convention", "loss"});
  EnvironmentEntry e;
  e.has_geometry = v.contains("height_m") || v.contains("horizontal_m");
  e.env.height_m = opt_number(v, path, "height_m", 50.0);
  e.env.horizontal_m = opt_number(v, path, "horizontal_m", 100.0);
  if (!(e.env.height_m > 0.0)) fail(join_path(path, "height_m"), "must be positive");
  if (!(e.env.horizontal_m >= 0.0)) fail(join_path(path, "horizontal_m"), "must be non-negative");
  e.env.a1 = opt_number(v, path, "a1", 1.0);
  e.env.b1 = opt_number(v, path, "b1", 2.0);
  e.env.a2 = opt_number(v, path, "a2", 1.0);
  e.env.b2 = opt_number(v, path, "b2", 0.0);
  e.env.excess_loss_db = opt_number(v, path, "excess_loss_db", 0.0);

  const auto mode = opt_string(v, path, "k0_mode", "fixed");
  if (mode == "fixed") {
    e.env.k0_fixed = db_to_linear(opt_number(v, path, "k0_db", 4.77));
  } else if (mode == "model") {
    if (v.contains("k0_db")) fail(join_path(path, "k0_db"), "not used in model mode");
    if (!(e.env.a2 > 0.0)) fail(join_path(path, "a2"), "model mode needs a2 > 0");
  } else {
    fail(join_path(path, "k0_mode"), "expected 'fixed' or 'model'");
  }

  const auto conv = opt_string(v, path, "loss_convention", "db-literal");
  if (conv == "db-literal") {
    e.env.loss_convention = channel::LossConvention::db_literal;
  } else if (conv == "physical") {
    e.env.loss_convention = channel::LossConvention::physical;
  } else {
    fail(join_path(path, "loss_convention"), "expected 'db-literal' or 'physical'");
  }

  if (v.contains("loss")) {
    const double l = req_number(v, path, "loss");
    if (!(l > 0.0)) fail(join_path(path, "loss"), "must be positive");
    e.loss_override = l;
  }
  return e;
}

LinkBudget parse_budget(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  check_keys(v, path, {"mode", "avg_snr_db", "e_s", "e_u", "n0", "n_u"});
  LinkBudget b;
  const auto mode = opt_string(v, path, "mode", "joint");
  if (mode == "joint") {
    b.joint = true;
    if (v.contains("avg_snr_db")) b.joint_avg_snr_db = req_number(v, path, "avg_snr_db");
  } else if (mode == "split") {
    b.joint = false;
    b.e_s = req_number(v, path, "e_s");
    b.e_u = req_number(v, path, "e_u");
    if (!(b.e_s > 0.0)) fail(join_path(path, "e_s"), "must be positive");
    if (!(b.e_u > 0.0)) fail(join_path(path, "e_u"), "must be positive");
  } else {
    fail(join_path(path, "mode"), "expected 'joint' or 'split'");
  }
  b.n0 = opt_number(v, path, "n0", 1.0);
  b.n_u = opt_number(v, path, "n_u", 1.0);
  if (!(b.n0 > 0.0)) fail(join_path(path, "n0"), "must be positive");
  if (!(b.n_u > 0.0)) fail(join_path(path, "n_u"), "must be positive");
  return b;
}

SweepSpec parse_sweep(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  check_keys(v, path, {"variable", "start", "stop", "steps"});
  SweepSpec s;
  const auto var = opt_string(v, path, "variable", "");
  if (var == "avg_snr_db") s.variable = SweepVariable::avg_snr_db;
  else if (var == "n_elements") s.variable = SweepVariable::n_elements;
  else if (var == "n_ris") s.variable = SweepVariable::n_ris;
  else if (var == "uav_height") s.variable = SweepVariable::uav_height;
  else if (var == "uav_x") s.variable = SweepVariable::uav_x;
  else if (var == "total_power") s.variable = SweepVariable::total_power;
  else fail(join_path(path, "variable"), "unknown sweep variable '" + var + "'");
  s.start = req_number(v, path, "start");
  s.stop = req_number(v, path, "stop");
  s.steps = opt_integer(v, path, "steps", 0);
  if (s.steps < 2) fail(join_path(path, "steps"), "at least 2 steps required");
  if (!std::isfinite(s.start) || !std::isfinite(s.stop))
    fail(join_path(path, "start"), "range must be finite");
  return s;
}

mcsim::McConfig parse_mc(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  check_keys(v, path, {"trials", "seed", "streams", "batch"});
  mcsim::McConfig m;
  if (v.contains("trials")) {
    const auto& t = v.at("trials");
    if (!t.is_number_integer()) fail(join_path(path, "trials"), "expected an integer");
    m.trials = t.get<std::int64_t>();
  }
  if (v.contains("seed")) {
    const auto& sd = v.at("seed");
    if (!sd.is_number_integer()) fail(join_path(path, "seed"), "expected an integer");
    m.seed = sd.get<std::uint64_t>();
  }
  m.streams = opt_integer(v, path, "streams", 1);
  m.batch = opt_integer(v, path, "batch", 65536);
  if (m.trials < 1) fail(join_path(path, "trials"), "must be >= 1");
  if (m.streams < 1) fail(join_path(path, "streams"), "must be >= 1");
  if (m.batch < 1) fail(join_path(path, "batch"), "must be >= 1");
  return m;
}

specfun::SeriesControl parse_series(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  check_keys(v, path, {"max_terms", "rel_tol", "abs_tol"});
  specfun::SeriesControl s;
  s.max_terms = opt_integer(v, path, "max_terms", 10000);
  s.rel_tol = opt_number(v, path, "rel_tol", 1e-12);
  s.abs_tol = opt_number(v, path, "abs_tol", 1e-300);
  if (s.max_terms < 1) fail(join_path(path, "max_terms"), "must be >= 1");
  if (!(s.abs_tol > 0.0) && !(s.rel_tol > 0.0))
    fail(join_path(path, "rel_tol"), "one of abs_tol, rel_tol must be positive");
  if (s.abs_tol < 0.0 || s.rel_tol < 0.0)
    fail(join_path(path, "rel_tol"), "tolerances must be non-negative");
  return s;
}

void cross_validate(const ExperimentConfig& cfg) {
  const auto var = cfg.sweep.variable;
  if (var == SweepVariable::avg_snr_db && !cfg.budget.joint)
    fail("sweep.variable", "avg_snr_db sweep requires a joint link budget");
  if (var != SweepVariable::avg_snr_db && var != SweepVariable::total_power &&
      cfg.budget.joint && !cfg.budget.joint_avg_snr_db)
    fail("link_budget.avg_snr_db", "required for non-SNR sweeps with a joint budget");
  if ((var == SweepVariable::uav_height || var == SweepVariable::uav_x) && !cfg.scene)
    fail("scene", "required for UAV geometry sweeps");
  if ((var == SweepVariable::n_elements || var == SweepVariable::n_ris) &&
      !(cfg.sweep.start >= 1.0))
    fail("sweep.start", "count sweeps must start at 1 or above");

  for (std::size_t i = 0; i < cfg.ris.size(); ++i) {
    const auto& e = cfg.ris[i];
    const std::string path = "ris[" + std::to_string(i) + "]";
    if (cfg.scene && e.has_distances)
      fail(path + ".d1_m", "explicit distances conflict with a scene");
    if (!cfg.scene && !e.has_distances && !e.path_loss_override)
      fail(path, "needs d1_m/d2_m, a path_loss override, or a scene");
  }
  if (!cfg.environment.loss_override && !cfg.environment.has_geometry && !cfg.scene)
    fail("environment", "needs loss, height_m/horizontal_m, or a scene");
  if (cfg.scene && cfg.environment.has_geometry)
    fail("environment.height_m", "explicit geometry conflicts with a scene");
}

}  // namespace

const char* sweep_variable_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::avg_snr_db: return "avg_snr_db";
    case SweepVariable::n_elements: return "n_elements";
    case SweepVariable::n_ris: return "n_ris";
    case SweepVariable::uav_height: return "uav_height";
    case SweepVariable::uav_x: return "uav_x";
    case SweepVariable::total_power: return "total_power";
  }
  return "unknown";
}

ExperimentConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error("", std::string("JSON parse error: ") + e.what());
  }
  if (!root.is_object()) fail("", "top-level value must be an object");
  check_keys(root, "", {"carrier_frequency_ghz", "wavelength_m", "gamma_out_db",
                        "modulation", "ris", "scene", "environment", "link_budget",
                        "sweep", "mc", "series", "path_loss_convention"});

  ExperimentConfig cfg;
  if (root.contains("wavelength_m") && root.contains("carrier_frequency_ghz"))
    fail("wavelength_m", "give either wavelength_m or carrier_frequency_ghz, not both");
  if (root.contains("wavelength_m")) {
    cfg.wavelength_m = req_number(root, "", "wavelength_m");
  } else {
    const double f_ghz = opt_number(root, "", "carrier_frequency_ghz", 2.0);
    if (!(f_ghz > 0.0)) fail("carrier_frequency_ghz", "must be positive");
    cfg.wavelength_m = speed_of_light_mps / (f_ghz * 1e9);
  }
  if (!(cfg.wavelength_m > 0.0)) fail("wavelength_m", "must be positive");

  cfg.gamma_out_db = opt_number(root, "", "gamma_out_db", 0.0);
  if (root.contains("modulation"))
    cfg.modulation = parse_modulation(root.at("modulation"), "modulation");

  if (!root.contains("ris")) fail("ris", "required field missing");
  const auto& ris = root.at("ris");
  if (!ris.is_array() || ris.empty()) fail("ris", "expected a non-empty array");
  for (std::size_t i = 0; i < ris.size(); ++i)
    cfg.ris.push_back(parse_ris(ris[i], "ris[" + std::to_string(i) + "]"));

  if (root.contains("scene")) cfg.scene = parse_scene(root.at("scene"), "scene");
  if (root.contains("environment"))
    cfg.environment = parse_environment(root.at("environment"), "environment");
  else
    cfg.environment.env.k0_fixed = db_to_linear(4.77);
  if (root.contains("link_budget"))
    cfg.budget = parse_budget(root.at("link_budget"), "link_budget");

  if (!root.contains("sweep")) fail("sweep", "required field missing");
  cfg.sweep = parse_sweep(root.at("sweep"), "sweep");

  if (root.contains("mc")) cfg.mc = parse_mc(root.at("mc"), "mc");
  if (root.contains("series")) cfg.series = parse_series(root.at("series"), "series");

  const auto plc = opt_string(root, "", "path_loss_convention", "physical");
  if (plc == "physical") cfg.path_loss_convention = PathLossConvention::physical;
  else if (plc == "db-literal") cfg.path_loss_convention = PathLossConvention::db_literal;
  else fail("path_loss_convention", "expected 'physical' or 'db-literal'");

  cross_validate(cfg);
  cfg.echo_json = root.dump();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("", "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<double> sweep_values(const SweepSpec& spec) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(spec.steps));
  for (int i = 0; i < spec.steps; ++i) {
    out.push_back(spec.start + (spec.stop - spec.start) * i / (spec.steps - 1));
  }
  return out;
}

DerivedPoint derive_point(const ExperimentConfig& cfg, double sweep_value) {
  std::vector<RisEntry> ris = cfg.ris;
  channel::A2gEnvironment env = cfg.environment.env;
  const bool has_scene = cfg.scene.has_value();
  channel::Scene scene = has_scene ? *cfg.scene : channel::Scene{};
  double joint_snr_db = cfg.budget.joint_avg_snr_db.value_or(0.0);

  switch (cfg.sweep.variable) {
    case SweepVariable::avg_snr_db:
      joint_snr_db = sweep_value;
      break;
    case SweepVariable::n_elements: {
      const int n = static_cast<int>(std::lround(sweep_value));
      if (n < 1) throw domain_error("n_elements sweep value must round to >= 1");
      for (auto& e : ris) e.spec.n_elements = n;
      break;
    }
    case SweepVariable::n_ris: {
      const int k = static_cast<int>(std::lround(sweep_value));
      if (k < 1) throw domain_error("n_ris sweep value must round to >= 1");
      ris.assign(static_cast<std::size_t>(k), cfg.ris.front());
      break;
    }
    case SweepVariable::uav_height:
      if (!has_scene) throw domain_error("uav_height sweep requires a scene");
      scene.uav_height_m = sweep_value;
      break;
    case SweepVariable::uav_x:
      if (!has_scene) throw domain_error("uav_x sweep requires a scene");
      scene.uav_x_m = sweep_value;
      break;
    case SweepVariable::total_power:
      break;  // budget handled by run_optimize
  }

  if (has_scene) {
    channel::Scene s = scene;
    std::vector<double> offsets;
    offsets.reserve(ris.size());
    for (std::size_t j = 0; j < ris.size(); ++j)
      offsets.push_back(s.ris_offsets_m[j % s.ris_offsets_m.size()]);
    s.ris_offsets_m = offsets;
    const auto dist = channel::scene_distances(s);
    for (std::size_t j = 0; j < ris.size(); ++j) {
      ris[j].spec.d1_m = dist.ris_d1_d2[j].first;
      ris[j].spec.d2_m = dist.ris_d1_d2[j].second;
    }
    env.height_m = s.uav_height_m;
    env.horizontal_m = dist.r0_m;
  }

  DerivedPoint out;
  out.paths.reserve(ris.size());
  std::vector<channel::GammaFit> fits;
  fits.reserve(ris.size());
  for (const auto& e : ris) {
    double pl;
    if (e.path_loss_override) {
      pl = *e.path_loss_override;
    } else {
      const double physical = channel::path_loss(e.spec, cfg.wavelength_m);
      if (cfg.path_loss_convention == PathLossConvention::db_literal) {
        pl = linear_to_db(physical);
        if (!(pl > 0.0))
          throw numeric_error("db-literal path loss is non-positive at this geometry");
      } else {
        pl = physical;
      }
    }
    fits.push_back(channel::gamma_fit_with_path_loss(e.spec, pl));
    out.paths.push_back({e.spec, pl});
  }

  out.p_los = channel::los_probability(env.height_m, env.horizontal_m);
  out.loss_exponent = env.a1 * out.p_los + env.b1;
  const double k0 = channel::rician_factor(env);
  const double loss = cfg.environment.loss_override ? *cfg.environment.loss_override
                                                    : channel::a2g_loss(env);

  double snr_a, snr_b;
  if (cfg.budget.joint) {
    snr_a = snr_b = db_to_linear(joint_snr_db);
  } else {
    snr_a = cfg.budget.e_s / cfg.budget.n0;
    snr_b = cfg.budget.e_u / cfg.budget.n_u;
  }
  out.link_a = snrstats::G2aLink{std::move(fits), snr_a};
  out.link_b = snrstats::A2gLink{k0, loss, snr_b};
  out.gamma_out = db_to_linear(cfg.gamma_out_db);
  return out;
}

namespace {

std::vector<std::pair<std::string, std::string>> result_meta(const ExperimentConfig& cfg) {
  return {
      {"loss_convention",
       cfg.environment.env.loss_convention == channel::LossConvention::db_literal
           ? "db-literal"
           : "physical"},
      {"path_loss_convention",
       cfg.path_loss_convention == PathLossConvention::physical ? "physical"
                                                                : "db-literal"},
  };
}

// runs fn(i) over [0, n) on `threads` workers; results land by index
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const int workers = static_cast<int>(std::min<std::size_t>(n, threads));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = static_cast<std::size_t>(w); i < n;
           i += static_cast<std::size_t>(workers))
        fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

void rethrow_first(std::vector<std::exception_ptr>& errors,
                   const std::vector<double>& values) {
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const config_error&) {
      throw;
    } catch (const std::exception& e) {
      throw numeric_error("sweep value " + format_double(values[i]) + ": " + e.what());
    }
  }
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& cfg, int threads) {
  if (cfg.sweep.variable == SweepVariable::total_power)
    throw domain_error("run_sweep: total_power sweeps belong to run_optimize");

  const auto values = sweep_values(cfg.sweep);
  SweepResult res;
  res.columns = {"sweep_variable", "sweep_value",  "avg_snr_a_db", "avg_snr_b_db",
                 "op_exact",       "op_asymptotic", "asep",        "capacity_bps_hz",
                 "op_mc",          "op_mc_se",      "asep_mc",     "asep_mc_se",
                 "capacity_mc",    "capacity_mc_se", "asep_a_route", "asep_b_route",
                 "capacity_route"};
  res.meta = result_meta(cfg);
  res.config_echo_json = cfg.echo_json;
  res.rows.resize(values.size());

  std::vector<std::exception_ptr> errors(values.size());
  const int inner_threads =
      values.size() == 1 ? std::max(1, threads) : 1;

  parallel_for(values.size(), threads, [&](std::size_t i) {
    try {
      const double v = values[i];
      const auto d = derive_point(cfg, v);

      metrics::MetricPoint p;
      p.avg_snr_a = d.link_a.avg_snr;
      p.avg_snr_b = d.link_b.avg_snr;
      const double op_a = snrstats::g2a_cdf(d.link_a, d.gamma_out);
      const double op_b = snrstats::a2g_cdf(d.link_b, d.gamma_out);
      p.op = metrics::outage_total(op_a, op_b);
      p.op_asymptotic = metrics::outage_asymptotic(d.link_a, d.link_b, d.gamma_out);
      const double asep_a = metrics::asep_hop_a(d.link_a, cfg.modulation);
      const double asep_b = metrics::asep_hop_b(d.link_b, cfg.modulation);
      p.asep = metrics::asep_total(asep_a, asep_b);
      const double cap_a = metrics::capacity_hop_a(d.link_a);
      const double cap_b = metrics::capacity_hop_b(d.link_b);
      p.capacity = metrics::capacity_total(cap_a, cap_b);

      std::vector<Cell> row;
      row.reserve(res.columns.size());
      row.emplace_back(std::string(sweep_variable_name(cfg.sweep.variable)));
      row.emplace_back(v);
      row.emplace_back(linear_to_db(p.avg_snr_a));
      row.emplace_back(linear_to_db(p.avg_snr_b));
      row.emplace_back(p.op);
      row.emplace_back(p.op_asymptotic);
      row.emplace_back(p.asep);
      row.emplace_back(p.capacity);
      if (cfg.mc) {
        mcsim::McConfig mc = *cfg.mc;
        std::uint64_t state = mc.seed ^ (0x9e3779b97f4a7c15ull * (i + 1));
        mc.seed = mcsim::splitmix64(state);
        const mcsim::McBundle bundle{d.paths, d.link_a.avg_snr, d.link_b, d.gamma_out,
                                     cfg.modulation};
        const auto est = mcsim::run_mc(bundle, mc, inner_threads);
        row.emplace_back(est.op.mean);
        row.emplace_back(est.op.std_error);
        row.emplace_back(est.asep.mean);
        row.emplace_back(est.asep.std_error);
        row.emplace_back(est.capacity.mean);
        row.emplace_back(est.capacity.std_error);
      } else {
        for (int k = 0; k < 6; ++k) row.emplace_back(std::monostate{});
      }
      row.emplace_back(p.asep_a_route);
      row.emplace_back(p.asep_b_route);
      row.emplace_back(p.capacity_route);
      res.rows[i] = std::move(row);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  rethrow_first(errors, values);
  return res;
}

SweepResult run_optimize(const ExperimentConfig& cfg, int threads) {
  if (cfg.sweep.variable != SweepVariable::total_power)
    throw domain_error("run_optimize: sweep variable must be total_power");

  const auto base = derive_point(cfg, 0.0);
  std::vector<channel::GammaFit> fits;
  fits.reserve(base.link_a.fits.size());
  for (const auto& f : base.link_a.fits) fits.push_back(f);
  const auto consts = powopt::make_objective_constants(
      fits, base.link_b.k0, base.link_b.loss, base.gamma_out, cfg.budget.n0,
      cfg.budget.n_u);

  const auto values = sweep_values(cfg.sweep);
  SweepResult res;
  res.columns = {"sweep_variable", "sweep_value",       "e_total",
                 "e_s_opt",        "e_u_opt",           "avg_snr_a_opt_db",
                 "avg_snr_b_opt_db", "op_asymptotic_opt", "op_exact_opt",
                 "op_exact_equal", "e_u_share",         "kkt_residual",
                 "iterations"};
  res.meta = result_meta(cfg);
  res.config_echo_json = cfg.echo_json;
  res.rows.resize(values.size());

  std::vector<std::exception_ptr> errors(values.size());
  parallel_for(values.size(), threads, [&](std::size_t i) {
    try {
      const double v = values[i];
      const double e_total = cfg.budget.n0 * db_to_linear(v);
      const auto split = powopt::solve_split(consts, e_total, 1e-12 * e_total);

      auto exact_op = [&](double e_s, double e_u) {
        snrstats::G2aLink la{fits, e_s / cfg.budget.n0};
        snrstats::A2gLink lb{base.link_b.k0, base.link_b.loss, e_u / cfg.budget.n_u};
        return metrics::outage_total(snrstats::g2a_cdf(la, base.gamma_out),
                                     snrstats::a2g_cdf(lb, base.gamma_out));
      };

      std::vector<Cell> row;
      row.reserve(res.columns.size());
      row.emplace_back(std::string(sweep_variable_name(cfg.sweep.variable)));
      row.emplace_back(v);
      row.emplace_back(e_total);
      row.emplace_back(split.e_s);
      row.emplace_back(split.e_u);
      row.emplace_back(linear_to_db(split.e_s / cfg.budget.n0));
      row.emplace_back(linear_to_db(split.e_u / cfg.budget.n_u));
      row.emplace_back(split.op_asymptotic);
      row.emplace_back(exact_op(split.e_s, split.e_u));
      row.emplace_back(exact_op(0.5 * e_total, 0.5 * e_total));
      row.emplace_back(split.e_u / e_total);
      row.emplace_back(powopt::kkt_residual(consts, split));
      row.emplace_back(static_cast<double>(split.iterations));
      res.rows[i] = std::move(row);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  rethrow_first(errors, values);
  return res;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void emit_csv(const SweepResult& result, std::ostream& os) {
  for (std::size_t c = 0; c < result.columns.size(); ++c) {
    if (c) os << ',';
    os << result.columns[c];
  }
  os << '\n';
  for (const auto& row : result.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      if (std::holds_alternative<double>(row[c]))
        os << format_double(std::get<double>(row[c]));
      else if (std::holds_alternative<std::string>(row[c]))
        os << std::get<std::string>(row[c]);
    }
    os << '\n';
  }
}

void emit_json(const SweepResult& result, std::ostream& os) {
  json out;
  out["config"] = result.config_echo_json.empty()
                      ? json::object()
                      : json::parse(result.config_echo_json);
  json meta = json::object();
  for (const auto& [k, v] : result.meta) meta[k] = v;
  out["meta"] = meta;
  out["columns"] = result.columns;
  json rows = json::array();
  for (const auto& row : result.rows) {
    json r = json::array();
    for (const auto& cell : row) {
      if (std::holds_alternative<double>(cell))
        r.push_back(std::get<double>(cell));
      else if (std::holds_alternative<std::string>(cell))
        r.push_back(std::get<std::string>(cell));
      else
        r.push_back(nullptr);
    }
    rows.push_back(std::move(r));
  }
  out["rows"] = std::move(rows);
  os << out.dump(2) << '\n';
}

void emit(const SweepResult& result, OutputFormat format, const std::string& path) {
  auto write = [&](std::ostream& os) {
    if (format == OutputFormat::csv)
      emit_csv(result, os);
    else
      emit_json(result, os);
    if (!os) throw io_error("write failed: " + path);
  };
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    if (!std::cout) throw io_error("write to stdout failed");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open output file '" + path + "'");
  write(out);
  out.close();
  if (!out) throw io_error("write failed: " + path);
}

}  // namespace risuav::experiment
