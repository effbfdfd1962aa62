// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors
//
// Outage probability (exact and high-SNR asymptote), average symbol error
// probability (per hop and decode-and-forward combined) and average channel
// capacity. User-facing values always come from stable resummed or
// quadrature routes; the literal truncated-series forms are provided as
// flag-checked cross-check evaluators.

#ifndef RISUAV_METRICS_HPP
#define RISUAV_METRICS_HPP

#include <functional>
#include <string>

#include "risuav/snrstats.hpp"
#include "risuav/specfun.hpp"

namespace risuav::metrics {

/// Modulation constants of the ASEP kernel p*Q(sqrt(2 q g)).
struct Modulation {
  double p = 1.0;
  double q = 1.0;
  std::string label = "bpsk";

  static Modulation bpsk() { return {1.0, 1.0, "bpsk"}; }
  /// M-ary PSK with q = sin(2*pi/M); kept alongside the textbook variant.
  static Modulation mpsk_sin2pi(int m);
  /// M-ary PSK with the textbook q = sin^2(pi/M).
  static Modulation mpsk(int m);
};

enum class Route {
  closed_form,
  quadrature,
  series,
  series_fallback_quadrature,
};

const char* route_name(Route r);

/// Value plus which formula variant produced it.
struct RouteValue {
  double value = 0.0;
  Route route = Route::closed_form;
  bool converged = true;
};

/// One evaluated sweep point.
struct MetricPoint {
  double avg_snr_a = 0.0;
  double avg_snr_b = 0.0;
  double op = 0.0;
  double op_asymptotic = 0.0;
  double asep = 0.0;
  double capacity = 0.0;
  std::string asep_a_route = "cdf-quadrature";
  std::string asep_b_route = "phi1-closed-form";
  std::string capacity_route = "truncated-quadrature";
};

// ---- outage ----

double outage_hop(const std::function<double(double)>& cdf, double gamma_out);
double outage_total(double p_a, double p_b);

/// High-SNR asymptote, implemented literally from the closed expression
/// (first-hop constant uses Gamma(shape_k)). Not clamped to [0,1]; it is an
/// asymptote and exceeds 1 at low SNR.
double outage_asymptotic(const snrstats::G2aLink& link_a,
                         const snrstats::A2gLink& link_b, double gamma_out);

// ---- average symbol error probability ----

/// Ground-to-air hop ASEP; default route is the CDF quadrature
/// p*sqrt(q)/(2*sqrt(pi)) * int exp(-q g) g^(-1/2) F(g) dg.
double asep_hop_a(const snrstats::G2aLink& link, const Modulation& mod);

/// Literal truncated multi-series form of the same quantity. Converges
/// numerically only while PL/(avg_snr*scale^2) stays small; on divergence
/// the returned value comes from the quadrature route and the flag says so.
RouteValue asep_hop_a_series(const snrstats::G2aLink& link, const Modulation& mod,
                             const specfun::SeriesControl& ctl = {});

/// Air-to-ground hop ASEP closed form built on Phi1 and 1F1. Small
/// Phi1-minus-1F1 differences (high SNR) and extreme Rician factors are
/// evaluated through the shared Euler integral of the difference, which is
/// the same closed form with the cancellation removed.
double asep_hop_b(const snrstats::A2gLink& link, const Modulation& mod);

/// Direct CDF-quadrature route for the air-to-ground hop; cross-check for
/// the closed form.
double asep_hop_b_quadrature(const snrstats::A2gLink& link, const Modulation& mod);

double asep_total(double p_a, double p_b);

// ---- average channel capacity ----

/// (1/ln 2) * int_0^upper (1 - F(g))/(1+g) dg via the log substitution.
double capacity_from_cdf(const std::function<double(double)>& cdf, double upper);

/// Ground-to-air capacity; truncated integral with upper limit
/// phi_scale * avg_snr^2 (the second-moment tail bound makes the truncation
/// error negligible once avg_snr is large).
double capacity_hop_a(const snrstats::G2aLink& link, double phi_scale = 1.0);

/// Truncated-series capacity evaluators for the ground-to-air hop; kept for
/// cross-checks at small configurations. No fallback: the flag reports
/// whether the truncation converged.
RouteValue capacity_hop_a_series(const snrstats::G2aLink& link,
                                 const specfun::SeriesControl& ctl = {});
/// Variant that replaces the 2F1 kernel with the split-form series; needs
/// the running exponent to stay away from integers (near-integer terms
/// quietly reuse the 2F1 kernel).
RouteValue capacity_hop_a_series_alt(const snrstats::G2aLink& link,
                                     const specfun::SeriesControl& ctl = {});

/// Air-to-ground capacity, truncated quadrature as above.
double capacity_hop_b(const snrstats::A2gLink& link, double phi_scale = 1.0);

/// Laguerre-series route for the air-to-ground capacity, valid at low
/// average SNR; falls back to quadrature (flagged) when the series blows up.
RouteValue capacity_hop_b_series(const snrstats::A2gLink& link,
                                 const specfun::SeriesControl& ctl = {});

/// Decode-and-forward system capacity: half the weaker hop.
double capacity_total(double c_a, double c_b);

/// Split-form identity sum_k (-1)^k t^(r-k)/(r-k) - pi*csc(pi*r) for
/// non-integer r > 0 and t > 1; equals the integral of x^r/(1+x) on [0,t].
/// Exists to validate the split-kernel capacity route.
double split_form_integral(double r, double t, const specfun::SeriesControl& ctl = {});

}  // namespace risuav::metrics

#endif  // RISUAV_METRICS_HPP
