// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors
//
// Scene geometry, path loss, line-of-sight probability, Rician factor and
// the Gamma moment-matching fit for each reflecting-surface path.

#ifndef RISUAV_CHANNEL_HPP
#define RISUAV_CHANNEL_HPP

#include <optional>
#include <utility>
#include <vector>

namespace risuav::channel {

/// Physical description of one reflecting surface and its two hops.
/// Fading on each hop is Nakagami-m (shape m, spread omega); m = 1 is
/// Rayleigh. Non-integer shapes are allowed.
struct RisSpec {
  int n_elements = 1;
  double m1 = 1.0;
  double m2 = 1.0;
  double omega1 = 1.0;
  double omega2 = 1.0;
  double d1_m = 1.0;
  double d2_m = 1.0;
  double g1_dbi = 5.0;
  double g2_dbi = 5.0;
  double efficiency = 1.0;

  /// Throws domain_error on any invariant violation.
  void validate() const;
};

/// Moment-matched Gamma approximation of the cascaded amplitude sum of one
/// surface, plus the path attenuation of that route.
struct GammaFit {
  double shape = 1.0;       // grows linearly with n_elements
  double scale = 1.0;       // amplitude units, independent of n_elements
  double path_loss = 1.0;   // linear attenuation
};

enum class LossConvention {
  db_literal,  // the dB figure itself divides the SNR
  physical,    // linear attenuation L0^alpha * 10^(A/10)
};

/// Air-to-ground environment: UAV height/offset plus the environment
/// constants of the elevation-driven loss-exponent and Rician-factor
/// models. A fixed Rician factor short-circuits the model.
struct A2gEnvironment {
  double height_m = 50.0;
  double horizontal_m = 100.0;
  double a1 = 1.0;  // loss-exponent model: alpha = a1 * P_los + b1
  double b1 = 2.0;
  double a2 = 1.0;  // Rician model: K0 = a2 * exp(b2 * atan(h/r0))
  double b2 = 0.0;
  double excess_loss_db = 0.0;
  std::optional<double> k0_fixed;  // linear; engaged when present
  LossConvention loss_convention = LossConvention::db_literal;

  void validate() const;
};

/// Placement of source, destination, reflecting surfaces and UAV. The
/// source sits at the origin; the destination is dest_distance_m along the
/// baseline; surfaces sit ris_baseline_m down the baseline with lateral
/// offsets perpendicular to it; the UAV flies at (uav_x_m, uav_height_m).
struct Scene {
  double dest_distance_m = 100.0;
  double ris_baseline_m = 40.0;
  std::vector<double> ris_offsets_m = {0.0, 5.0, -5.0};
  double uav_x_m = 70.0;
  double uav_height_m = 50.0;

  void validate() const;
};

struct SceneDistances {
  std::vector<std::pair<double, double>> ris_d1_d2;  // per surface
  double r0_m = 0.0;                                 // UAV-to-destination horizontal
};

/// Far-field two-hop path loss of a reflecting-surface route (linear,
/// >= 1 in any physical configuration). Gains are converted from dBi.
double path_loss(const RisSpec& spec, double wavelength_m);

/// Gamma moment-matching: shape/scale of the cascaded amplitude sum plus
/// the route path loss computed from geometry.
GammaFit gamma_fit(const RisSpec& spec, double wavelength_m);

/// Same fit with an externally supplied path loss (normalized setups,
/// alternative loss conventions).
GammaFit gamma_fit_with_path_loss(const RisSpec& spec, double path_loss);

/// Line-of-sight probability of the air-to-ground hop; the empty product
/// (small horizontal distance) gives 1.
double los_probability(double height_m, double horizontal_m);

/// Linear Rician factor: the fixed value when configured, otherwise
/// a2 * exp(b2 * atan(h/r0)). r0 = 0 uses the atan limit pi/2.
double rician_factor(const A2gEnvironment& env);

/// Air-to-ground loss under the configured convention. Throws
/// domain_error when the literal convention produces a non-positive
/// divisor (slant range below one meter).
double a2g_loss(const A2gEnvironment& env);

/// Per-surface (d1, d2) and UAV horizontal distance from the scene.
SceneDistances scene_distances(const Scene& scene);

}  // namespace risuav::channel

#endif  // RISUAV_CHANNEL_HPP
