// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors

#include "risuav/snrstats.hpp"

#include <cmath>

#include "risuav/common.hpp"
#include "risuav/errors.hpp"

namespace risuav::snrstats {

void G2aLink::validate() const {
  if (fits.empty()) throw domain_error("G2aLink: at least one surface required");
  for (const auto& f : fits) {
    if (!(f.shape > 0.0) || !(f.scale > 0.0) || !(f.path_loss > 0.0))
      throw domain_error("G2aLink: invalid Gamma fit");
  }
  if (!(avg_snr > 0.0)) throw domain_error("G2aLink: average SNR must be positive");
}

void A2gLink::validate() const {
  if (!(k0 > 0.0) || !(loss > 0.0) || !(avg_snr > 0.0))
    throw domain_error("A2gLink: k0, loss and average SNR must be positive");
}

namespace {

// Standardized Gamma argument of surface k at SNR g.
inline double fit_argument(const channel::GammaFit& f, double avg_snr, double g) {
  return std::sqrt(f.path_loss * g / avg_snr) / f.scale;
}

}  // namespace

double g2a_cdf(const G2aLink& link, double gamma) {
  link.validate();
  if (!(gamma >= 0.0)) throw domain_error("g2a_cdf: SNR must be non-negative");
  if (gamma == 0.0) return 0.0;
  double p = 1.0;
  for (const auto& f : link.fits) {
    p *= specfun::reg_lower_gamma(f.shape, fit_argument(f, link.avg_snr, gamma));
    if (p == 0.0) break;
  }
  return p;
}

double g2a_pdf(const G2aLink& link, double gamma) {
  link.validate();
  if (!(gamma > 0.0)) throw domain_error("g2a_pdf: SNR must be positive");

  const std::size_t n = link.fits.size();
  std::vector<double> cdf(n);
  for (std::size_t k = 0; k < n; ++k) {
    cdf[k] = specfun::reg_lower_gamma(link.fits[k].shape,
                                      fit_argument(link.fits[k], link.avg_snr, gamma));
  }
  double density = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& f = link.fits[j];
    const double x = fit_argument(f, link.avg_snr, gamma);
    // d/dg P(a, x(g)) = x^a e^{-x} / (2 g Gamma(a)), in log space to keep
    // large shapes finite.
    const double log_fj = f.shape * std::log(x) - x - specfun::ln_gamma(f.shape) -
                          std::log(2.0 * gamma);
    double term = std::exp(log_fj);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) term *= cdf[k];
    density += term;
  }
  return density;
}

SeriesEval g2a_cdf_series(const G2aLink& link, double gamma,
                          const specfun::SeriesControl& ctl) {
  link.validate();
  if (!(gamma >= 0.0)) throw domain_error("g2a_cdf_series: SNR must be non-negative");
  SeriesEval out;
  if (gamma == 0.0) {
    out.value = 0.0;
    out.converged = true;
    return out;
  }

  // The multi-index sum factorizes: per surface,
  // sum_n (-1)^n x^(a+n) / (n! (a+n) Gamma(a)) with x the standardized arg.
  double product = 1.0;
  bool all_converged = true;
  for (const auto& f : link.fits) {
    const double x = fit_argument(f, link.avg_snr, gamma);
    const double log_scale = f.shape * std::log(x) - specfun::ln_gamma(f.shape);
    double factor = std::exp(log_scale) / f.shape;  // n = 0 term
    double sum = factor;
    double max_mag = std::abs(factor);
    bool converged = false;
    double power = std::exp(log_scale);
    for (int n = 1; n < ctl.max_terms; ++n) {
      power *= -x / n;
      const double term = power / (f.shape + n);
      sum += term;
      max_mag = std::max(max_mag, std::abs(term));
      if (std::abs(term) < ctl.abs_tol + ctl.rel_tol * std::abs(sum)) {
        converged = true;
        break;
      }
      if (!std::isfinite(term)) break;
    }
    // Catastrophic cancellation counts as non-convergent even if the terms
    // eventually shrink.
    if (max_mag > 1e12 * std::max(std::abs(sum), 1e-280)) converged = false;
    all_converged = all_converged && converged;
    product *= sum;
  }
  out.value = product;
  out.converged = all_converged;
  return out;
}

double a2g_cdf(const A2gLink& link, double gamma) {
  link.validate();
  if (!(gamma >= 0.0)) throw domain_error("a2g_cdf: SNR must be non-negative");
  if (gamma == 0.0) return 0.0;
  const double a = std::sqrt(2.0 * link.k0);
  const double b = std::sqrt(2.0 * gamma * link.loss * (1.0 + link.k0) / link.avg_snr);
  return clamp_probability(1.0 - specfun::marcum_q1(a, b));
}

double a2g_pdf(const A2gLink& link, double gamma) {
  link.validate();
  if (!(gamma > 0.0)) throw domain_error("a2g_pdf: SNR must be positive");
  const double ratio = link.loss / link.avg_snr;
  const double s = 2.0 * std::sqrt(link.k0 * (1.0 + link.k0) * ratio * gamma);
  // prefactor * exp(-K0 - (1+K0) L g / avg + s) * [e^{-s} I0(s)]
  const double log_val = std::log((1.0 + link.k0) * ratio) - link.k0 -
                         (1.0 + link.k0) * ratio * gamma + s +
                         std::log(specfun::bessel_i0_scaled(s));
  return std::exp(log_val);
}

}  // namespace risuav::snrstats
