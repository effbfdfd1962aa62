// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors

#include "risuav/channel.hpp"

#include <cmath>
#include <string>

#include "risuav/common.hpp"
#include "risuav/errors.hpp"
#include "risuav/specfun.hpp"

namespace risuav::channel {

void RisSpec::validate() const {
  if (n_elements < 1) throw domain_error("RisSpec: n_elements must be >= 1");
  if (!(m1 >= 0.5) || !(m2 >= 0.5))
    throw domain_error("RisSpec: Nakagami shapes must be >= 0.5");
  if (!(omega1 > 0.0) || !(omega2 > 0.0))
    throw domain_error("RisSpec: spread parameters must be positive");
  if (!(d1_m > 0.0) || !(d2_m > 0.0))
    throw domain_error("RisSpec: distances must be positive");
  if (!(efficiency > 0.0) || efficiency > 1.0)
    throw domain_error("RisSpec: efficiency must lie in (0, 1]");
}

void A2gEnvironment::validate() const {
  if (!(height_m > 0.0)) throw domain_error("A2gEnvironment: height must be positive");
  if (!(horizontal_m >= 0.0))
    throw domain_error("A2gEnvironment: horizontal distance must be non-negative");
  if (k0_fixed && !(*k0_fixed > 0.0))
    throw domain_error("A2gEnvironment: fixed Rician factor must be positive");
}

void Scene::validate() const {
  if (!(dest_distance_m > 0.0)) throw domain_error("Scene: destination distance must be positive");
  if (!(uav_height_m > 0.0)) throw domain_error("Scene: UAV height must be positive");
  if (ris_offsets_m.empty()) throw domain_error("Scene: at least one surface offset required");
}

double path_loss(const RisSpec& spec, double wavelength_m) {
  spec.validate();
  if (!(wavelength_m > 0.0)) throw domain_error("path_loss: wavelength must be positive");
  const double g1 = db_to_linear(spec.g1_dbi);
  const double g2 = db_to_linear(spec.g2_dbi);
  const double lam_over_4pi = wavelength_m / (4.0 * pi);
  const double forward = std::pow(lam_over_4pi, 4) * g1 * g2 * spec.efficiency /
                         (spec.d1_m * spec.d1_m * spec.d2_m * spec.d2_m);
  return 1.0 / forward;
}

namespace {

GammaFit fit_core(const RisSpec& spec, double pl) {
  using specfun::ln_gamma;
  const double lg_m1 = ln_gamma(spec.m1);
  const double lg_m2 = ln_gamma(spec.m2);
  const double lg_m1h = ln_gamma(spec.m1 + 0.5);
  const double lg_m2h = ln_gamma(spec.m2 + 0.5);

  // D = m1 m2 G(m1)^2 G(m2)^2 - G(m1+1/2)^2 G(m2+1/2)^2, evaluated as
  // m1 m2 G(m1)^2 G(m2)^2 * (1 - rho) with rho < 1 for shapes >= 1/2.
  const double log_mm_gg = std::log(spec.m1 * spec.m2) + 2.0 * lg_m1 + 2.0 * lg_m2;
  const double rho = std::exp(2.0 * lg_m1h + 2.0 * lg_m2h - log_mm_gg);
  if (!(rho < 1.0))
    throw numeric_error("gamma_fit: moment-matching denominator not positive");

  const double n = static_cast<double>(spec.n_elements);
  GammaFit fit;
  fit.shape = n * rho / (1.0 - rho);
  const double log_denom = 0.5 * std::log(spec.m1 / spec.omega1) + lg_m1 + lg_m1h +
                           0.5 * std::log(spec.m2 / spec.omega2) + lg_m2 + lg_m2h;
  fit.scale = std::exp(log_mm_gg - log_denom) * (1.0 - rho);
  fit.path_loss = pl;
  return fit;
}

}  // namespace

GammaFit gamma_fit(const RisSpec& spec, double wavelength_m) {
  return fit_core(spec, path_loss(spec, wavelength_m));
}

GammaFit gamma_fit_with_path_loss(const RisSpec& spec, double pl) {
  spec.validate();
  if (!(pl > 0.0)) throw domain_error("gamma_fit: path loss must be positive");
  return fit_core(spec, pl);
}

double los_probability(double height_m, double horizontal_m) {
  if (!(height_m > 0.0)) throw domain_error("los_probability: height must be positive");
  if (!(horizontal_m >= 0.0))
    throw domain_error("los_probability: horizontal distance must be non-negative");
  const int m = static_cast<int>(
      std::floor(horizontal_m / 200.0 * std::sqrt(6.0) - 1.0));
  if (m < 0) return 1.0;
  double p = 1.0;
  const double h2 = height_m * height_m;
  for (int n = 0; n <= m; ++n) {
    const double frac = 1.0 - (n + 0.5) / (m + 1.0);
    p *= 1.0 - std::exp(-h2 * frac * frac / 450.0);
  }
  return p;
}

double rician_factor(const A2gEnvironment& env) {
  env.validate();
  if (env.k0_fixed) return *env.k0_fixed;
  const double angle = env.horizontal_m == 0.0
                           ? 0.5 * pi
                           : std::atan(env.height_m / env.horizontal_m);
  return env.a2 * std::exp(env.b2 * angle);
}

double a2g_loss(const A2gEnvironment& env) {
  env.validate();
  const double slant = std::hypot(env.height_m, env.horizontal_m);
  const double alpha = env.a1 * los_probability(env.height_m, env.horizontal_m) + env.b1;
  if (env.loss_convention == LossConvention::physical) {
    return std::pow(slant, alpha) * db_to_linear(env.excess_loss_db);
  }
  const double loss_db = 10.0 * alpha * std::log10(slant) + env.excess_loss_db;
  if (!(loss_db > 0.0))
    throw domain_error("a2g_loss: literal convention needs a positive dB figure "
                       "(slant range too small)");
  return loss_db;
}

SceneDistances scene_distances(const Scene& scene) {
  scene.validate();
  SceneDistances out;
  out.ris_d1_d2.reserve(scene.ris_offsets_m.size());
  for (const double off : scene.ris_offsets_m) {
    const double d1 = std::hypot(scene.ris_baseline_m, off);
    const double dx = scene.uav_x_m - scene.ris_baseline_m;
    const double d2 = std::sqrt(dx * dx + off * off +
                                scene.uav_height_m * scene.uav_height_m);
    if (!(d1 > 0.0) || !(d2 > 0.0))
      throw domain_error("scene_distances: degenerate zero-length hop");
    out.ris_d1_d2.emplace_back(d1, d2);
  }
  out.r0_m = std::abs(scene.dest_distance_m - scene.uav_x_m);
  return out;
}

}  // namespace risuav::channel
