// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors
//
// Configuration ingestion, parameter sweeps and tabular output. Configs are
// JSON; dB at every boundary, linear inside. Identical config + seed gives
// byte-identical output regardless of thread count.

#ifndef RISUAV_EXPERIMENT_HPP
#define RISUAV_EXPERIMENT_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "risuav/channel.hpp"
#include "risuav/mcsim.hpp"
#include "risuav/metrics.hpp"
#include "risuav/powopt.hpp"
#include "risuav/snrstats.hpp"
#include "risuav/specfun.hpp"

namespace risuav::experiment {

enum class SweepVariable {
  avg_snr_db,
  n_elements,
  n_ris,
  uav_height,
  uav_x,
  total_power,
};

const char* sweep_variable_name(SweepVariable v);

/// How geometric surface path loss feeds the SNR: the physical linear
/// attenuation, or its dB figure used directly as the divisor (mirrors the
/// literal air-to-ground loss convention; useful for figure-style scenes).
enum class PathLossConvention { physical, db_literal };

enum class OutputFormat { csv, json };

struct SweepSpec {
  SweepVariable variable = SweepVariable::avg_snr_db;
  double start = 0.0;
  double stop = 40.0;
  int steps = 2;
};

/// Transmit powers and noise levels. In joint mode both hops share one
/// average SNR (the sweep value, or joint_avg_snr_db for non-SNR sweeps).
struct LinkBudget {
  bool joint = true;
  std::optional<double> joint_avg_snr_db;
  double e_s = 1.0;
  double e_u = 1.0;
  double n0 = 1.0;
  double n_u = 1.0;
};

struct RisEntry {
  channel::RisSpec spec;
  std::optional<double> path_loss_override;  // linear
  bool has_distances = false;
};

struct EnvironmentEntry {
  channel::A2gEnvironment env;
  std::optional<double> loss_override;  // linear divisor
  bool has_geometry = false;
};

struct ExperimentConfig {
  double wavelength_m = 0.0;
  double gamma_out_db = 0.0;
  metrics::Modulation modulation = metrics::Modulation::bpsk();
  std::vector<RisEntry> ris;
  std::optional<channel::Scene> scene;
  EnvironmentEntry environment;
  LinkBudget budget;
  SweepSpec sweep;
  std::optional<mcsim::McConfig> mc;
  specfun::SeriesControl series;
  PathLossConvention path_loss_convention = PathLossConvention::physical;
  std::string echo_json;  // normalized parsed form, echoed into JSON output
};

/// Derived quantities of one evaluation point.
struct DerivedPoint {
  std::vector<mcsim::RisPath> paths;
  snrstats::G2aLink link_a;
  snrstats::A2gLink link_b;
  double gamma_out = 1.0;
  double p_los = 1.0;
  double loss_exponent = 2.0;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

std::vector<double> sweep_values(const SweepSpec& spec);

/// Recomputes geometry, path losses, fits and links for one sweep value.
DerivedPoint derive_point(const ExperimentConfig& cfg, double sweep_value);

using Cell = std::variant<std::monostate, double, std::string>;

struct SweepResult {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> meta;
  std::string config_echo_json;
};

/// Evaluates every sweep point (closed forms, plus Monte-Carlo estimates
/// when configured). Row order follows the sweep index no matter how many
/// threads execute.
SweepResult run_sweep(const ExperimentConfig& cfg, int threads = 1);

/// Power-budget sweep: optimal split, asymptotic and exact outage at the
/// optimum, and the equal-split reference per budget point.
SweepResult run_optimize(const ExperimentConfig& cfg, int threads = 1);

/// Shortest text that round-trips the double exactly (C locale).
std::string format_double(double v);

void emit_csv(const SweepResult& result, std::ostream& os);
void emit_json(const SweepResult& result, std::ostream& os);

/// Writes to a file, or to stdout when path is "-".
void emit(const SweepResult& result, OutputFormat format, const std::string& path);

}  // namespace risuav::experiment

#endif  // RISUAV_EXPERIMENT_HPP
