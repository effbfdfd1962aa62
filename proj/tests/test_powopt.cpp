// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "risuav/channel.hpp"
#include "risuav/common.hpp"
#include "risuav/errors.hpp"
#include "risuav/metrics.hpp"
#include "risuav/powopt.hpp"

using namespace risuav;
using namespace risuav::powopt;

namespace {

ObjectiveConstants consts(double m_sum, double c1, double c2) {
  ObjectiveConstants c;
  c.m_sum = m_sum;
  c.log_c1 = std::log(c1);
  c.log_c2 = std::log(c2);
  return c;
}

// brute-force minimizer of the asymptotic objective on a uniform grid
double grid_minimizer(const ObjectiveConstants& c, double e_total, int points) {
  double best_x = 0.0, best_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i < points; ++i) {
    const double x = e_total * (i + 0.5) / points;
    const double v = objective(c, x, e_total - x);
    if (v < best_v) {
      best_v = v;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace

TEST_CASE("objective arithmetic") {
  auto c = consts(2.0, 1.0, 1.0);
  CHECK(objective(c, 1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(objective(c, 1e12, 1e12) <= 1e-5);
  CHECK_THROWS_AS(objective(c, 0.0, 1.0), domain_error);
  CHECK_THROWS_AS(objective(c, 1.0, -1.0), domain_error);
}

TEST_CASE("M = 2 has the closed-form split") {
  std::mt19937_64 rng(20260808);
  std::uniform_real_distribution<double> uc(std::log(0.01), std::log(100.0));
  std::uniform_real_distribution<double> ue(std::log(0.5), std::log(5000.0));
  for (int i = 0; i < 25; ++i) {
    const double c1 = std::exp(uc(rng)), c2 = std::exp(uc(rng));
    const double e_total = std::exp(ue(rng));
    auto c = consts(2.0, c1, c2);
    auto split = solve_split(c, e_total, 1e-12 * e_total);
    const double ratio = std::sqrt(c1 / c2);
    const double want = ratio * e_total / (1.0 + ratio);
    CHECK(split.e_s == doctest::Approx(want).epsilon(1e-9));
    CHECK(split.e_s + split.e_u == doctest::Approx(e_total).epsilon(1e-12));
  }
}

TEST_CASE("bisection residual and budget accounting") {
  auto c = consts(5.0, 2.0, 0.3);
  const double e_total = 100.0;
  auto split = solve_split(c, e_total, 1e-10 * e_total);
  const double d = c.d();
  const double g = split.e_s - d * std::pow(e_total - split.e_s, 4.0 / (c.m_sum + 2.0));
  CHECK(std::abs(g) <= 1e-10 * e_total);
  CHECK(split.e_s + split.e_u == doctest::Approx(e_total).epsilon(1e-12));
  CHECK(split.iterations <= 200);
  CHECK(split.op_asymptotic ==
        doctest::Approx(objective(c, split.e_s, split.e_u)).epsilon(1e-14));
}

TEST_CASE("solver matches a dense grid search over random constants") {
  std::mt19937_64 rng(20260809);
  std::uniform_real_distribution<double> um(1.0, 20.0);
  std::uniform_real_distribution<double> uc(std::log(0.01), std::log(100.0));
  std::uniform_real_distribution<double> ue(std::log(1.0), std::log(10000.0));
  const int grid_points = 100000;
  for (int i = 0; i < 20; ++i) {
    auto c = consts(um(rng), std::exp(uc(rng)), std::exp(uc(rng)));
    const double e_total = std::exp(ue(rng));
    auto split = solve_split(c, e_total, 1e-12 * e_total);
    const double brute = grid_minimizer(c, e_total, grid_points);
    CHECK(std::abs(split.e_s - brute) <= e_total / grid_points);
  }
}

TEST_CASE("optimal split never loses to the equal split") {
  std::mt19937_64 rng(20260810);
  std::uniform_real_distribution<double> um(1.0, 30.0);
  std::uniform_real_distribution<double> uc(std::log(0.001), std::log(1000.0));
  for (int i = 0; i < 50; ++i) {
    auto c = consts(um(rng), std::exp(uc(rng)), std::exp(uc(rng)));
    const double e_total = 500.0;
    auto split = solve_split(c, e_total, 1e-12 * e_total);
    CHECK(split.op_asymptotic <=
          objective(c, 0.5 * e_total, 0.5 * e_total) * (1.0 + 1e-12));
  }
}

TEST_CASE("first-order condition holds at the solution") {
  auto c = consts(7.0, 4.0, 0.9);
  auto split = solve_split(c, 250.0, 1e-12 * 250.0);
  CHECK(kkt_residual(c, split) <= 1e-6);

  PowerSplit equal;
  equal.e_s = 125.0;
  equal.e_u = 125.0;
  CHECK(kkt_residual(c, equal) > 1e-3);
}

TEST_CASE("residual tightens as the bisection tolerance tightens") {
  auto c = consts(9.0, 1.7, 0.2);
  double prev = std::numeric_limits<double>::infinity();
  for (double tol : {1e-2, 1e-5, 1e-9, 1e-13}) {
    auto split = solve_split(c, 80.0, tol * 80.0);
    const double res = kkt_residual(c, split);
    CHECK(res <= prev * 1.001);
    prev = res;
  }
}

TEST_CASE("tolerance below float resolution flags instead of failing") {
  auto c = consts(3.0, 1.0, 1.0);
  auto split = solve_split(c, 10.0, 1e-300);
  const double g = split.e_s -
                   c.d() * std::pow(10.0 - split.e_s, 4.0 / (c.m_sum + 2.0));
  CHECK((split.at_machine_precision || g == 0.0));
  CHECK(split.e_s > 0.0);
  CHECK(split.e_u > 0.0);
}

TEST_CASE("second-hop share grows with the budget when M exceeds 2") {
  auto c = consts(6.0, 3.0, 0.5);
  double prev_share = 0.0;
  for (double e_total = 1.0; e_total <= 1e4; e_total *= 2.0) {
    auto split = solve_split(c, e_total, 1e-12 * e_total);
    const double share = split.e_u / e_total;
    CHECK(share >= prev_share - 1e-9);
    prev_share = share;
  }
}

TEST_CASE("hundred-element configurations need the log-space constants") {
  channel::RisSpec rs;
  rs.n_elements = 100;
  const auto fit = channel::gamma_fit_with_path_loss(rs, 1.0);
  std::vector<channel::GammaFit> fits{fit, fit, fit};
  auto c = make_objective_constants(fits, 3.0, 1.0, 1.0, 1.0, 1.0);
  CHECK(c.m_sum == doctest::Approx(3.0 * fit.shape).epsilon(1e-12));
  CHECK(std::isfinite(c.log_c1));
  CHECK(c.log_c1 < -700.0);   // the linear value would underflow a double
  CHECK(c.c1() == 0.0);       // and the accessor shows exactly that
  CHECK(c.d() > 0.0);
  auto split = solve_split(c, 1000.0, 1e-12 * 1000.0);
  CHECK(split.e_s > 0.0);
  CHECK(split.e_u > 0.0);
  CHECK(std::isfinite(split.op_asymptotic));
  CHECK(split.op_asymptotic > 0.0);
  CHECK(kkt_residual(c, split) <= 1e-6);
}

TEST_CASE("objective constants compose the asymptotic outage") {
  channel::RisSpec rs;
  rs.n_elements = 5;
  const auto fit = channel::gamma_fit_with_path_loss(rs, 1.0);
  std::vector<channel::GammaFit> fits{fit};
  const double k0 = 3.0, loss = 2.0, gamma_out = 1.5, n0 = 1.3, nu = 0.8;
  auto c = make_objective_constants(fits, k0, loss, gamma_out, n0, nu);

  // objective(Es, Eu) must equal the asymptotic outage with the
  // corresponding per-hop average SNRs
  const double e_s = 700.0, e_u = 900.0;
  snrstats::G2aLink la{fits, e_s / n0};
  snrstats::A2gLink lb{k0, loss, e_u / nu};
  const double want = metrics::outage_asymptotic(la, lb, gamma_out);
  CHECK(objective(c, e_s, e_u) == doctest::Approx(want).epsilon(1e-12));
}
