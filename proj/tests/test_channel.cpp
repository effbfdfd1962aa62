// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "risuav/channel.hpp"
#include "risuav/common.hpp"
#include "risuav/errors.hpp"
#include "risuav/quadrature.hpp"
#include "risuav/specfun.hpp"

using namespace risuav;
using namespace risuav::channel;

namespace {

RisSpec spec(int n, double m, double omega, double d, double g_dbi) {
  RisSpec s;
  s.n_elements = n;
  s.m1 = s.m2 = m;
  s.omega1 = s.omega2 = omega;
  s.d1_m = s.d2_m = d;
  s.g1_dbi = s.g2_dbi = g_dbi;
  return s;
}

// E[sqrt(G)] for G ~ Gamma(shape m, scale omega/m), by quadrature.
double amplitude_mean(double m, double omega) {
  const double scale = omega / m;
  quad::Options tight;
  tight.abs_tol = 1e-15;
  tight.rel_tol = 1e-13;
  tight.max_subdivisions = 4000;
  auto r = quad::integrate_to_infinity(
      [=](double g) {
        if (g <= 0.0) return 0.0;
        const double lp = (m - 1.0) * std::log(g) - g / scale -
                          specfun::ln_gamma(m) - m * std::log(scale);
        return std::sqrt(g) * std::exp(lp);
      },
      0.0, tight);
  return r.value;
}

}  // namespace

TEST_CASE("path_loss unit configuration") {
  const double lambda = 0.15;
  RisSpec s = spec(1, 1.0, 1.0, lambda / (4.0 * pi), 0.0);
  CHECK(path_loss(s, lambda) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("path_loss at the default carrier settings") {
  const double lambda = speed_of_light_mps / 2e9;
  RisSpec s = spec(1, 1.0, 1.0, 40.0, 5.0);
  // direct formula composition
  const double g = db_to_linear(5.0);
  const double want =
      1.0 / (std::pow(lambda / (4.0 * pi), 4) * g * g / std::pow(40.0, 4));
  CHECK(path_loss(s, lambda) == doctest::Approx(want).epsilon(1e-13));
  CHECK(path_loss(s, lambda) == doctest::Approx(1.2645e13).epsilon(1e-3));
}

TEST_CASE("path_loss scaling and symmetry") {
  const double lambda = 0.15;
  RisSpec s = spec(1, 1.0, 1.0, 10.0, 3.0);
  RisSpec far = s;
  far.d1_m *= 2.0;
  CHECK(path_loss(far, lambda) == doctest::Approx(4.0 * path_loss(s, lambda)).epsilon(1e-13));

  RisSpec asym = s;
  asym.d1_m = 7.0;
  asym.d2_m = 23.0;
  asym.g1_dbi = 2.0;
  asym.g2_dbi = 9.0;
  RisSpec swapped = asym;
  std::swap(swapped.d1_m, swapped.d2_m);
  std::swap(swapped.g1_dbi, swapped.g2_dbi);
  CHECK(path_loss(asym, lambda) == doctest::Approx(path_loss(swapped, lambda)).epsilon(1e-13));
  CHECK_THROWS_AS(path_loss(s, 0.0), domain_error);
}

TEST_CASE("gamma_fit exact Rayleigh-product case") {
  RisSpec s = spec(5, 1.0, 1.0, 40.0, 5.0);
  auto fit = gamma_fit_with_path_loss(s, 1.0);
  const double rho = pi * pi / 16.0;
  CHECK(fit.shape == doctest::Approx(5.0 * rho / (1.0 - rho)).epsilon(1e-12));
  CHECK(fit.scale == doctest::Approx((1.0 - rho) / (pi / 4.0)).epsilon(1e-12));
  CHECK(fit.shape == doctest::Approx(8.0497).epsilon(1e-4));
  CHECK(fit.scale == doctest::Approx(0.48784).epsilon(1e-4));
}

TEST_CASE("gamma_fit moment-matching oracle for non-integer shapes") {
  RisSpec s = spec(10, 2.5, 1.0, 40.0, 5.0);
  s.omega1 = 2.0;
  s.omega2 = 0.7;
  auto fit = gamma_fit_with_path_loss(s, 1.0);
  const double mu = amplitude_mean(2.5, 2.0) * amplitude_mean(2.5, 0.7);
  const double var = 2.0 * 0.7 - mu * mu;
  CHECK(fit.shape == doctest::Approx(10.0 * mu * mu / var).epsilon(1e-9));
  CHECK(fit.scale == doctest::Approx(var / mu).epsilon(1e-9));
}

TEST_CASE("gamma_fit quadrature oracle reproduces the Rayleigh case to 1e-10") {
  RisSpec s = spec(4, 1.0, 1.0, 40.0, 5.0);
  auto fit = gamma_fit_with_path_loss(s, 1.0);
  const double mu = amplitude_mean(1.0, 1.0) * amplitude_mean(1.0, 1.0);
  const double var = 1.0 - mu * mu;
  CHECK(std::abs(fit.shape - 4.0 * mu * mu / var) <= 1e-10 * fit.shape);
  CHECK(std::abs(fit.scale - var / mu) <= 1e-10 * fit.scale);
}

TEST_CASE("gamma_fit element-count scaling") {
  RisSpec s5 = spec(5, 1.6, 1.3, 40.0, 5.0);
  RisSpec s10 = s5;
  s10.n_elements = 10;
  auto f5 = gamma_fit_with_path_loss(s5, 2.0);
  auto f10 = gamma_fit_with_path_loss(s10, 2.0);
  CHECK(f10.shape == doctest::Approx(2.0 * f5.shape).epsilon(1e-13));
  CHECK(f10.scale == doctest::Approx(f5.scale).epsilon(1e-13));

  double prev = 0.0;
  for (int n = 1; n <= 30; ++n) {
    RisSpec sn = s5;
    sn.n_elements = n;
    const double a = gamma_fit_with_path_loss(sn, 1.0).shape;
    CHECK(a > prev);
    prev = a;
  }
}

TEST_CASE("los_probability") {
  CHECK(los_probability(37.0, 50.0) == 1.0);  // empty product
  const double want = 1.0 - std::exp(-2500.0 * 0.25 / 450.0);
  CHECK(los_probability(50.0, 100.0) == doctest::Approx(want).epsilon(1e-12));
  CHECK(los_probability(50.0, 100.0) == doctest::Approx(0.7506).epsilon(1e-4));
  CHECK(los_probability(1e9, 600.0) == doctest::Approx(1.0).epsilon(1e-9));

  for (double h : {50.0, 120.0}) {
    double prev = 2.0;
    for (double r0 = 200.0; r0 <= 2000.0; r0 += 100.0) {
      const double p = los_probability(h, r0);
      CHECK(p <= prev + 1e-12);
      prev = p;
    }
  }
  double prev = 0.0;
  for (double h = 10.0; h <= 500.0; h += 10.0) {
    const double p = los_probability(h, 800.0);
    CHECK(p >= prev - 1e-12);
    prev = p;
  }
}

TEST_CASE("rician_factor") {
  A2gEnvironment env;
  env.k0_fixed = db_to_linear(4.77);
  CHECK(rician_factor(env) == doctest::Approx(3.0).epsilon(1e-3));

  A2gEnvironment model;
  model.a2 = 1.4;
  model.b2 = 2.0;
  model.height_m = 1e9;
  model.horizontal_m = 100.0;
  CHECK(rician_factor(model) == doctest::Approx(1.4 * std::exp(2.0 * pi / 2.0)).epsilon(1e-6));

  model.height_m = 75.0;
  model.horizontal_m = 0.0;  // overhead: atan limit
  CHECK(rician_factor(model) == doctest::Approx(1.4 * std::exp(2.0 * pi / 2.0)).epsilon(1e-12));

  A2gEnvironment flat;
  flat.a2 = 1.0;
  flat.b2 = 0.0;
  flat.height_m = 123.0;
  flat.horizontal_m = 456.0;
  CHECK(rician_factor(flat) == 1.0);
}

TEST_CASE("a2g_loss conventions") {
  A2gEnvironment env;
  env.a1 = 0.0;
  env.b1 = 2.0;  // alpha = 2 regardless of LoS
  env.height_m = 6.0;
  env.horizontal_m = 8.0;  // slant 10
  env.excess_loss_db = 0.0;
  env.loss_convention = LossConvention::db_literal;
  CHECK(a2g_loss(env) == doctest::Approx(20.0).epsilon(1e-12));
  env.loss_convention = LossConvention::physical;
  CHECK(a2g_loss(env) == doctest::Approx(100.0).epsilon(1e-12));

  env.excess_loss_db = 3.0;
  CHECK(a2g_loss(env) == doctest::Approx(100.0 * db_to_linear(3.0)).epsilon(1e-12));

  // composition with the LoS model
  A2gEnvironment urban;
  urban.a1 = 1.0;
  urban.b1 = 2.0;
  urban.height_m = 50.0;
  urban.horizontal_m = 100.0;
  const double alpha = 1.0 * los_probability(50.0, 100.0) + 2.0;
  const double slant = std::sqrt(50.0 * 50.0 + 100.0 * 100.0);
  CHECK(a2g_loss(urban) == doctest::Approx(10.0 * alpha * std::log10(slant)).epsilon(1e-12));

  A2gEnvironment tiny;
  tiny.a1 = 0.0;
  tiny.b1 = 2.0;
  tiny.height_m = 0.3;
  tiny.horizontal_m = 0.2;  // slant < 1 m: literal dB figure <= 0
  CHECK_THROWS_AS(a2g_loss(tiny), domain_error);
}

TEST_CASE("scene_distances") {
  Scene s;
  s.dest_distance_m = 100.0;
  s.ris_baseline_m = 40.0;
  s.ris_offsets_m = {0.0};
  s.uav_x_m = 40.0;
  s.uav_height_m = 55.0;
  auto d = scene_distances(s);
  CHECK(d.ris_d1_d2[0].first == doctest::Approx(40.0).epsilon(1e-13));
  CHECK(d.ris_d1_d2[0].second == doctest::Approx(55.0).epsilon(1e-13));
  CHECK(d.r0_m == doctest::Approx(60.0).epsilon(1e-13));

  s.uav_x_m = 100.0;
  CHECK(scene_distances(s).r0_m == 0.0);

  // hand Euclidean check of the default three-surface layout
  Scene fig;
  fig.dest_distance_m = 100.0;
  fig.ris_baseline_m = 40.0;
  fig.ris_offsets_m = {0.0, 5.0, -5.0};
  fig.uav_x_m = 70.0;
  fig.uav_height_m = 50.0;
  auto fd = scene_distances(fig);
  CHECK(fd.r0_m == doctest::Approx(30.0));
  CHECK(fd.ris_d1_d2[0].first == doctest::Approx(40.0));
  CHECK(fd.ris_d1_d2[1].first == doctest::Approx(std::sqrt(1600.0 + 25.0)));
  CHECK(fd.ris_d1_d2[0].second == doctest::Approx(std::sqrt(900.0 + 2500.0)));
  CHECK(fd.ris_d1_d2[1].second == doctest::Approx(std::sqrt(900.0 + 25.0 + 2500.0)));
  CHECK(fd.ris_d1_d2[2].second == doctest::Approx(fd.ris_d1_d2[1].second));

  Scene degenerate = fig;
  degenerate.ris_baseline_m = 0.0;
  degenerate.ris_offsets_m = {0.0};
  CHECK_THROWS_AS(scene_distances(degenerate), domain_error);
}

TEST_CASE("validation errors") {
  RisSpec bad = spec(0, 1.0, 1.0, 1.0, 0.0);
  CHECK_THROWS_AS(bad.validate(), domain_error);
  bad = spec(1, 0.3, 1.0, 1.0, 0.0);
  CHECK_THROWS_AS(bad.validate(), domain_error);
  bad = spec(1, 1.0, 1.0, 1.0, 0.0);
  bad.efficiency = 1.5;
  CHECK_THROWS_AS(bad.validate(), domain_error);
}
