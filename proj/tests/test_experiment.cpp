// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "risuav/common.hpp"
#include "risuav/errors.hpp"
#include "risuav/experiment.hpp"

using namespace risuav;
using namespace risuav::experiment;

namespace {

const std::string kMinimal = R"({
  "ris": [{"n_elements": 5, "path_loss": 1.0}],
  "environment": {"loss": 1.0},
  "sweep": {"variable": "avg_snr_db", "start": 0.0, "stop": 20.0, "steps": 5}
})";

std::string config_dir() { return RISUAV_CONFIG_DIR; }

std::string csv_of(const SweepResult& r) {
  std::ostringstream os;
  emit_csv(r, os);
  return os.str();
}

}  // namespace

TEST_CASE("minimal config parses with documented defaults") {
  auto cfg = parse_config(kMinimal);
  CHECK(cfg.wavelength_m == doctest::Approx(speed_of_light_mps / 2e9).epsilon(1e-12));
  CHECK(cfg.gamma_out_db == 0.0);
  CHECK(cfg.modulation.label == "bpsk");
  CHECK(cfg.ris.size() == 1);
  CHECK(cfg.ris[0].spec.g1_dbi == 5.0);
  CHECK(cfg.ris[0].spec.m1 == 1.0);
  CHECK(cfg.environment.env.k0_fixed.has_value());
  CHECK(*cfg.environment.env.k0_fixed == doctest::Approx(3.0).epsilon(1e-3));
  CHECK_FALSE(cfg.mc.has_value());
  CHECK(cfg.series.max_terms == 10000);
}

TEST_CASE("validation errors carry the offending field path") {
  auto expect_field = [](const std::string& text, const std::string& field) {
    try {
      parse_config(text);
      FAIL("expected config_error for ", field);
    } catch (const config_error& e) {
      CHECK(e.field == field);
    }
  };
  expect_field(R"({"ris": [{"n_elements": -3, "path_loss": 1.0}],
                   "environment": {"loss": 1.0},
                   "sweep": {"variable":"avg_snr_db","start":0,"stop":10,"steps":2}})",
               "ris[0].n_elements");
  expect_field(R"({"ris": [{"n_elements": 3, "path_loss": 1.0}],
                   "environment": {"loss": 1.0}, "bogus": 1,
                   "sweep": {"variable":"avg_snr_db","start":0,"stop":10,"steps":2}})",
               "bogus");
  expect_field(R"({"ris": [{"n_elements": 3, "path_loss": 1.0}],
                   "environment": {"loss": 1.0},
                   "sweep": {"variable":"avg_snr_db","start":0,"stop":10,"steps":1}})",
               "sweep.steps");
  expect_field(R"({"ris": [{"n_elements": 3, "path_loss": 1.0}],
                   "environment": {"loss": 1.0},
                   "link_budget": {"mode":"split","e_s":1,"e_u":1},
                   "sweep": {"variable":"avg_snr_db","start":0,"stop":10,"steps":2}})",
               "sweep.variable");
  expect_field(R"({"ris": [{"n_elements": 3}],
                   "environment": {"loss": 1.0},
                   "sweep": {"variable":"avg_snr_db","start":0,"stop":10,"steps":2}})",
               "ris[0]");
  CHECK_THROWS_AS(parse_config("{ not json"), config_error);
  CHECK_THROWS_AS(load_config("/nonexistent/risuav.json"), config_error);
}

TEST_CASE("shipped reference config carries the published grid point") {
  auto cfg = load_config(config_dir() + "/fig1_fig2_op_capacity_vs_snr.json");
  CHECK(cfg.ris.size() == 3);
  for (const auto& e : cfg.ris) {
    CHECK(e.spec.n_elements == 15);
    CHECK(e.spec.m1 == 1.0);
    CHECK(e.spec.m2 == 1.0);
    CHECK(e.spec.omega1 == 1.0);
    CHECK(e.spec.omega2 == 1.0);
    CHECK(e.path_loss_override.has_value());
  }
  CHECK(cfg.environment.env.k0_fixed.has_value());
  CHECK(cfg.mc.has_value());
  CHECK(cfg.mc->trials == 1000000);
}

TEST_CASE("derive_point recomputes geometry per sweep value") {
  auto cfg = load_config(config_dir() + "/fig6_op_vs_position.json");
  auto at_source = derive_point(cfg, 0.0);
  auto overhead = derive_point(cfg, 40.0);
  auto at_dest = derive_point(cfg, 100.0);
  CHECK(at_dest.link_b.k0 > at_source.link_b.k0);  // steeper elevation angle
  // surface-to-UAV hop is shortest with the UAV right above the surfaces
  CHECK(overhead.paths[0].spec.d2_m == doctest::Approx(50.0));
  CHECK(at_source.paths[0].spec.d2_m > overhead.paths[0].spec.d2_m + 10.0);
  CHECK(at_dest.paths[0].spec.d2_m > overhead.paths[0].spec.d2_m + 10.0);
  // path loss follows the db-literal convention in this config
  CHECK(at_source.paths[0].path_loss > 100.0);
  CHECK(at_source.paths[0].path_loss < 200.0);
}

TEST_CASE("sweep rows are ordered, complete and monotone in SNR") {
  auto cfg = parse_config(kMinimal);
  auto res = run_sweep(cfg);
  REQUIRE(res.rows.size() == 5);
  CHECK(res.columns.size() == 17);
  double prev = 2.0;
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    CHECK(res.rows[i].size() == res.columns.size());
    CHECK(std::get<double>(res.rows[i][1]) == doctest::Approx(5.0 * i));
    const double op = std::get<double>(res.rows[i][4]);
    CHECK(op <= prev + 1e-15);
    CHECK(op >= 0.0);
    CHECK(op <= 1.0);
    prev = op;
    // MC columns are empty cells when Monte-Carlo is off
    CHECK(std::holds_alternative<std::monostate>(res.rows[i][8]));
  }
}

TEST_CASE("column set is fixed regardless of enabled estimators") {
  auto plain = run_sweep(parse_config(kMinimal));
  auto with_mc = parse_config(kMinimal);
  mcsim::McConfig mc;
  mc.trials = 2000;
  mc.seed = 5;
  with_mc.mc = mc;
  auto rich = run_sweep(with_mc);
  CHECK(plain.columns == rich.columns);
  CHECK(std::holds_alternative<double>(rich.rows[0][8]));
}

TEST_CASE("sweeps are deterministic and thread-count independent") {
  auto cfg = parse_config(kMinimal);
  mcsim::McConfig mc;
  mc.trials = 20000;
  mc.seed = 42;
  mc.streams = 4;
  cfg.mc = mc;
  const auto a = csv_of(run_sweep(cfg, 1));
  const auto b = csv_of(run_sweep(cfg, 1));
  const auto c = csv_of(run_sweep(cfg, 4));
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("empty result emits a header-only CSV") {
  SweepResult res;
  res.columns = {"a", "b"};
  std::ostringstream os;
  emit_csv(res, os);
  CHECK(os.str() == "a,b\n");
}

TEST_CASE("json emission round-trips every value exactly") {
  auto cfg = parse_config(kMinimal);
  auto res = run_sweep(cfg);
  std::ostringstream os;
  emit_json(res, os);
  auto parsed = nlohmann::json::parse(os.str());
  REQUIRE(parsed["rows"].size() == res.rows.size());
  CHECK(parsed["meta"]["loss_convention"] == "db-literal");
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    for (std::size_t c = 0; c < res.columns.size(); ++c) {
      const auto& cell = res.rows[i][c];
      const auto& jcell = parsed["rows"][i][c];
      if (std::holds_alternative<double>(cell)) {
        CHECK(jcell.get<double>() == std::get<double>(cell));
      } else if (std::holds_alternative<std::string>(cell)) {
        CHECK(jcell.get<std::string>() == std::get<std::string>(cell));
      } else {
        CHECK(jcell.is_null());
      }
    }
  }
}

TEST_CASE("optimize sweep honors the budget identity and beats the equal split") {
  auto cfg = load_config(config_dir() + "/fig7_fig8_power_split.json");
  auto res = run_optimize(cfg, 2);
  REQUIRE(res.rows.size() == 26);
  double prev_share = 0.0;
  for (const auto& row : res.rows) {
    const double e_total = std::get<double>(row[2]);
    const double e_s = std::get<double>(row[3]);
    const double e_u = std::get<double>(row[4]);
    CHECK(std::abs(e_s + e_u - e_total) <= 1e-9 * e_total);
    const double op_opt = std::get<double>(row[8]);
    const double op_eq = std::get<double>(row[9]);
    CHECK(op_opt <= op_eq * (1.0 + 1e-9));
    const double share = std::get<double>(row[10]);
    CHECK(share >= prev_share - 1e-9);
    prev_share = share;
  }
  CHECK_THROWS_AS(run_sweep(cfg), domain_error);
  auto snr_cfg = parse_config(kMinimal);
  CHECK_THROWS_AS(run_optimize(snr_cfg), domain_error);
}

TEST_CASE("figure-shaped sweeps reproduce their qualitative landmarks") {
  // interior height optimum
  auto fig5 = load_config(config_dir() + "/fig5_op_vs_height.json");
  auto res5 = run_sweep(fig5, 2);
  std::size_t best = 0;
  double best_op = 2.0;
  for (std::size_t i = 0; i < res5.rows.size(); ++i) {
    const double op = std::get<double>(res5.rows[i][4]);
    if (op < best_op) {
      best_op = op;
      best = i;
    }
  }
  CHECK(best > 0);
  CHECK(best < res5.rows.size() - 1);

  // element-count saturation
  auto fig4 = load_config(config_dir() + "/fig4_op_vs_n_elements.json");
  auto res4 = run_sweep(fig4, 2);
  double prev = 2.0;
  for (const auto& row : res4.rows) {
    const double op = std::get<double>(row[4]);
    CHECK(op <= prev + 1e-15);
    prev = op;
  }
  const double first = std::get<double>(res4.rows.front()[4]);
  const double last = std::get<double>(res4.rows.back()[4]);
  CHECK(first > 2.0 * last);  // visible improvement before the floor
}

TEST_CASE("emit writes files and flags io failures") {
  auto cfg = parse_config(kMinimal);
  auto res = run_sweep(cfg);
  const std::string path = "risuav_test_emit.csv";
  emit(res, OutputFormat::csv, path);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("sweep_variable,", 0) == 0);
  std::remove(path.c_str());
  CHECK_THROWS_AS(emit(res, OutputFormat::csv, "/nonexistent/dir/out.csv"), io_error);
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.0, 1.0, 10.0, 0.1, 1.0 / 3.0, 2.5e-300, 6.02e23}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(10.0) == "10");
}
