// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors
//
// SNR distributions of the two hops: the best-of-K reflected ground-to-air
// link (Gamma moment-matched per surface) and the Rician air-to-ground
// link. Linear SNR throughout; dB only at I/O boundaries.

#ifndef RISUAV_SNRSTATS_HPP
#define RISUAV_SNRSTATS_HPP

#include <vector>

#include "risuav/channel.hpp"
#include "risuav/specfun.hpp"

namespace risuav::snrstats {

/// Ground-to-air hop: one Gamma fit per surface (independent,
/// non-identically distributed), selection takes the best instantaneous
/// SNR. avg_snr is the transmit SNR E_s/N_0 (linear).
struct G2aLink {
  std::vector<channel::GammaFit> fits;
  double avg_snr = 1.0;

  void validate() const;
};

/// Air-to-ground hop: Rician factor, linear loss divisor, and the transmit
/// SNR E_u/N_u (linear).
struct A2gLink {
  double k0 = 1.0;
  double loss = 1.0;
  double avg_snr = 1.0;

  void validate() const;
};

struct SeriesEval {
  double value = 0.0;
  bool converged = false;
};

/// CDF of the selected-surface SNR: product over surfaces of
/// P(shape_k, sqrt(PL_k * g / avg_snr) / scale_k).
double g2a_cdf(const G2aLink& link, double gamma);

/// Density of the selected-surface SNR (product-rule derivative of the
/// CDF product); integrates to 1.
double g2a_pdf(const G2aLink& link, double gamma);

/// Truncated literal alternating-series form of the selection CDF. Kept
/// as a low-argument fixture: it cancels catastrophically once
/// PL*g/(avg_snr*scale^2) grows past order one, which the convergence
/// flag reports.
SeriesEval g2a_cdf_series(const G2aLink& link, double gamma,
                          const specfun::SeriesControl& ctl = {});

/// Rician-hop CDF 1 - Q1(sqrt(2 K0), sqrt(2 g L (1+K0) / avg_snr)).
double a2g_cdf(const A2gLink& link, double gamma);

/// Rician-hop density; evaluated with merged exponents so deep-tail
/// arguments cannot overflow the Bessel factor.
double a2g_pdf(const A2gLink& link, double gamma);

}  // namespace risuav::snrstats

#endif  // RISUAV_SNRSTATS_HPP
