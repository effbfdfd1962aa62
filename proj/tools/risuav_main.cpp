// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors
//
// Command-line front end: sweep | optimize | mc-validate | show-derived.
// Exit codes: 0 success, 2 config error, 3 I/O error, 4 numeric failure.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "risuav/common.hpp"
#include "risuav/errors.hpp"
#include "risuav/experiment.hpp"

namespace {

using namespace risuav;

struct CommonArgs {
  std::string config_path;
  std::string out_path = "-";
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_output) {
  cmd->add_option("--config", args.config_path, "experiment config file (JSON)")
      ->required();
  if (with_output) {
    cmd->add_option("--out", args.out_path, "output path, '-' for stdout");
    cmd->add_option("--format", args.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
  }
  cmd->add_option("--seed", args.seed, "Monte-Carlo master seed override");
  cmd->add_option("--trials", args.trials, "Monte-Carlo trial count override");
  cmd->add_option("--threads", args.threads, "worker threads")
      ->check(CLI::PositiveNumber);
}

experiment::ExperimentConfig load_with_overrides(const CommonArgs& args) {
  auto cfg = experiment::load_config(args.config_path);
  if (args.seed || args.trials) {
    if (!cfg.mc) cfg.mc = mcsim::McConfig{};
    if (args.seed) cfg.mc->seed = *args.seed;
    if (args.trials) cfg.mc->trials = *args.trials;
  }
  return cfg;
}

experiment::OutputFormat parse_format(const std::string& f) {
  return f == "json" ? experiment::OutputFormat::json : experiment::OutputFormat::csv;
}

int cmd_sweep(const CommonArgs& args) {
  const auto cfg = load_with_overrides(args);
  const auto result = experiment::run_sweep(cfg, args.threads);
  experiment::emit(result, parse_format(args.format), args.out_path);
  return 0;
}

int cmd_optimize(const CommonArgs& args) {
  const auto cfg = load_with_overrides(args);
  const auto result = experiment::run_optimize(cfg, args.threads);
  experiment::emit(result, parse_format(args.format), args.out_path);
  return 0;
}

int cmd_mc_validate(const CommonArgs& args) {
  auto cfg = load_with_overrides(args);
  if (!cfg.mc) cfg.mc = mcsim::McConfig{};  // defaults: 1e6 trials

  const auto values = experiment::sweep_values(cfg.sweep);
  double worst_sigma = 0.0;
  double worst_abs = 0.0;
  std::printf("%-12s %-10s %-12s %-12s %-10s %-8s\n", "sweep_value", "metric",
              "closed_form", "mc_mean", "mc_se", "dev_se");
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto d = experiment::derive_point(cfg, values[i]);
    mcsim::McConfig mc = *cfg.mc;
    std::uint64_t state = mc.seed ^ (0x9e3779b97f4a7c15ull * (i + 1));
    mc.seed = mcsim::splitmix64(state);
    const mcsim::McBundle bundle{d.paths, d.link_a.avg_snr, d.link_b, d.gamma_out,
                                 cfg.modulation};
    const auto est = mcsim::run_mc(bundle, mc, args.threads);

    const double op = metrics::outage_total(snrstats::g2a_cdf(d.link_a, d.gamma_out),
                                            snrstats::a2g_cdf(d.link_b, d.gamma_out));
    const double asep = metrics::asep_total(metrics::asep_hop_a(d.link_a, cfg.modulation),
                                            metrics::asep_hop_b(d.link_b, cfg.modulation));
    const double cap = metrics::capacity_total(metrics::capacity_hop_a(d.link_a),
                                               metrics::capacity_hop_b(d.link_b));

    struct RowT {
      const char* name;
      double closed, mc_mean, mc_se;
    } rows[] = {{"op", op, est.op.mean, est.op.std_error},
                {"asep", asep, est.asep.mean, est.asep.std_error},
                {"capacity", cap, est.capacity.mean, est.capacity.std_error}};
    for (const auto& r : rows) {
      const double dev = std::abs(r.closed - r.mc_mean);
      const double sigmas = r.mc_se > 0.0 ? dev / r.mc_se : 0.0;
      worst_sigma = std::max(worst_sigma, sigmas);
      worst_abs = std::max(worst_abs, dev);
      std::printf("%-12.6g %-10s %-12.6g %-12.6g %-10.3g %-8.2f\n", values[i], r.name,
                  r.closed, r.mc_mean, r.mc_se, sigmas);
    }
  }
  std::printf("max deviation: %.2f std errors (%.3g absolute)\n", worst_sigma, worst_abs);
  return 0;
}

int cmd_show_derived(const CommonArgs& args) {
  const auto cfg = load_with_overrides(args);
  const double v0 = cfg.sweep.variable == experiment::SweepVariable::total_power
                        ? 0.0
                        : experiment::sweep_values(cfg.sweep).front();
  const auto d = experiment::derive_point(cfg, v0);

  std::printf("wavelength_m: %.10g\n", cfg.wavelength_m);
  std::printf("gamma_out_db: %.10g (linear %.10g)\n", cfg.gamma_out_db, d.gamma_out);
  std::printf("modulation: %s (p=%.10g q=%.10g)\n", cfg.modulation.label.c_str(),
              cfg.modulation.p, cfg.modulation.q);
  for (std::size_t k = 0; k < d.paths.size(); ++k) {
    const auto& f = d.link_a.fits[k];
    const auto& s = d.paths[k].spec;
    std::printf(
        "ris[%zu]: n=%d m1=%.4g m2=%.4g omega1=%.4g omega2=%.4g d1=%.6g d2=%.6g "
        "shape=%.10g scale=%.10g path_loss=%.10g\n",
        k, s.n_elements, s.m1, s.m2, s.omega1, s.omega2, s.d1_m, s.d2_m, f.shape,
        f.scale, f.path_loss);
  }
  std::printf("a2g: p_los=%.10g loss_exponent=%.10g loss=%.10g k0=%.10g (%.4g dB)\n",
              d.p_los, d.loss_exponent, d.link_b.loss, d.link_b.k0,
              linear_to_db(d.link_b.k0));
  std::printf("avg_snr_a=%.10g avg_snr_b=%.10g\n", d.link_a.avg_snr, d.link_b.avg_snr);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dual-hop multi-RIS UAV link performance analysis"};
  app.require_subcommand(1);

  CommonArgs sweep_args, opt_args, mc_args, show_args;
  auto* sweep = app.add_subcommand("sweep", "evaluate metrics over a parameter sweep");
  add_common(sweep, sweep_args, true);
  auto* optimize = app.add_subcommand("optimize", "optimal power split over a budget sweep");
  add_common(optimize, opt_args, true);
  auto* validate = app.add_subcommand("mc-validate",
                                      "compare closed forms against Monte-Carlo");
  add_common(validate, mc_args, false);
  auto* show = app.add_subcommand("show-derived", "print derived per-config quantities");
  add_common(show, show_args, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    if (optimize->parsed()) return cmd_optimize(opt_args);
    if (validate->parsed()) return cmd_mc_validate(mc_args);
    if (show->parsed()) return cmd_show_derived(show_args);
  } catch (const risuav::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const risuav::io_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
