// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors

#include "risuav/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "risuav/common.hpp"
#include "risuav/errors.hpp"
#include "risuav/quadrature.hpp"

namespace risuav::metrics {

namespace {

constexpr double ln2 = 0.6931471805599453094;

// Standardized per-surface constants of the literal series:
// weight_k(n) = (-1)^n x^(a+n) / (n! (a+n) Gamma(a)).
struct SeriesSurface {
  double shape;
  double log_x;
  double log_gamma_shape;
};

std::vector<SeriesSurface> series_surfaces(const snrstats::G2aLink& link) {
  std::vector<SeriesSurface> out;
  out.reserve(link.fits.size());
  for (const auto& f : link.fits) {
    const double x = std::sqrt(f.path_loss / link.avg_snr) / f.scale;
    out.push_back({f.shape, std::log(x), specfun::ln_gamma(f.shape)});
  }
  return out;
}

// Nested multi-index walker for the coupled alternating series. The
// coupling g(S) > 0 is supplied as log g(S) of the index-sum exponent
// S = sum_k (shape_k + n_k). Each index is truncated by term magnitude;
// the flag drops when the truncation budget runs out or the summed terms
// cancel past twelve digits.
class NestedSeriesSum {
 public:
  NestedSeriesSum(std::vector<SeriesSurface> surfaces,
                  const specfun::SeriesControl& ctl,
                  std::function<double(double)> log_coupling)
      : surfaces_(std::move(surfaces)), ctl_(ctl), log_coupling_(std::move(log_coupling)) {}

  snrstats::SeriesEval run() {
    base_shape_sum_ = 0.0;
    for (const auto& s : surfaces_) base_shape_sum_ += s.shape;
    recurse(0, 0.0, +1, base_shape_sum_);
    snrstats::SeriesEval out;
    out.value = sum_;
    // losing more than ~8 of the 16 digits to cancellation counts as failure
    out.converged = healthy_ && std::isfinite(sum_) &&
                    max_leaf_ <= 1e8 * std::max(std::abs(sum_), 1e-280);
    return out;
  }

 private:
  void recurse(std::size_t k, double log_w, int sign, double shape_sum) {
    if (k == surfaces_.size()) {
      const double mag = std::exp(log_w + log_coupling_(shape_sum));
      if (!std::isfinite(mag)) {
        healthy_ = false;
        return;
      }
      sum_ += sign * mag;
      abs_sum_ += mag;
      max_leaf_ = std::max(max_leaf_, mag);
      ++leaves_;
      return;
    }
    const auto& s = surfaces_[k];
    double log_fact = 0.0;  // log n!
    double peak = 0.0;
    int quiet = 0;
    for (int n = 0; n < ctl_.max_terms; ++n) {
      if (leaves_ > leaf_budget_) {
        healthy_ = false;
        return;
      }
      if (n > 0) log_fact += std::log(static_cast<double>(n));
      const double lw = (s.shape + n) * s.log_x - log_fact -
                        std::log(s.shape + n) - s.log_gamma_shape;
      const double before = abs_sum_;
      recurse(k + 1, log_w + lw, sign * (n % 2 == 0 ? 1 : -1), shape_sum + n);
      if (!healthy_) return;
      const double contrib = abs_sum_ - before;
      peak = std::max(peak, contrib);
      const double thresh = ctl_.abs_tol + ctl_.rel_tol * (std::abs(sum_) + abs_sum_ * 1e-4);
      if (contrib < thresh && contrib <= peak) {
        if (++quiet >= 2) return;
      } else {
        quiet = 0;
      }
    }
    healthy_ = false;  // ran into the per-index cap
  }

  std::vector<SeriesSurface> surfaces_;
  const specfun::SeriesControl& ctl_;
  std::function<double(double)> log_coupling_;
  double base_shape_sum_ = 0.0;
  double sum_ = 0.0;
  double abs_sum_ = 0.0;
  double max_leaf_ = 0.0;
  long leaves_ = 0;
  bool healthy_ = true;
  static constexpr long leaf_budget_ = 4000000;
};

}  // namespace

Modulation Modulation::mpsk_sin2pi(int m) {
  if (m < 2) throw domain_error("mpsk: constellation size must be >= 2");
  return {2.0, std::sin(2.0 * pi / m), "mpsk" + std::to_string(m) + "-sin2pi"};
}

Modulation Modulation::mpsk(int m) {
  if (m < 2) throw domain_error("mpsk: constellation size must be >= 2");
  const double s = std::sin(pi / m);
  return {2.0, s * s, "mpsk" + std::to_string(m)};
}

const char* route_name(Route r) {
  switch (r) {
    case Route::closed_form: return "closed-form";
    case Route::quadrature: return "quadrature";
    case Route::series: return "series";
    case Route::series_fallback_quadrature: return "series-fallback-quadrature";
  }
  return "unknown";
}

double outage_hop(const std::function<double(double)>& cdf, double gamma_out) {
  if (!(gamma_out > 0.0)) throw domain_error("outage_hop: threshold must be positive");
  return clamp_probability(cdf(gamma_out));
}

double outage_total(double p_a, double p_b) {
  if (p_a < 0.0 || p_a > 1.0 || p_b < 0.0 || p_b > 1.0)
    throw domain_error("outage_total: inputs must be probabilities");
  return p_a + p_b - p_a * p_b;
}

double outage_asymptotic(const snrstats::G2aLink& link_a,
                         const snrstats::A2gLink& link_b, double gamma_out) {
  link_a.validate();
  link_b.validate();
  if (!(gamma_out > 0.0)) throw domain_error("outage_asymptotic: threshold must be positive");

  double log_hop1 = 0.0;
  for (const auto& f : link_a.fits) {
    // [scale^2 * avg / (g_out * PL * Gamma(a)^(-2/a))]^(-a/2)
    const double log_base = 2.0 * std::log(f.scale) + std::log(link_a.avg_snr) +
                            (2.0 / f.shape) * specfun::ln_gamma(f.shape) -
                            std::log(gamma_out) - std::log(f.path_loss);
    log_hop1 += -0.5 * f.shape * log_base;
  }
  const double hop1 = std::exp(log_hop1);
  const double hop2 = std::exp(-link_b.k0) * (1.0 + link_b.k0) * gamma_out *
                      link_b.loss / link_b.avg_snr;
  return hop1 + hop2;
}

double asep_hop_a(const snrstats::G2aLink& link, const Modulation& mod) {
  link.validate();
  // gamma = t^2 removes the inverse-sqrt endpoint:
  // P = p sqrt(q) / sqrt(pi) * int_0^inf exp(-q t^2) F(t^2) dt
  const double scale = mod.p * std::sqrt(mod.q) / std::sqrt(pi);
  auto res = quad::integrate_to_infinity(
      [&](double t) {
        const double w = std::exp(-mod.q * t * t);
        return w == 0.0 ? 0.0 : w * snrstats::g2a_cdf(link, t * t);
      },
      0.0);
  return clamp_probability(scale * res.value);
}

RouteValue asep_hop_a_series(const snrstats::G2aLink& link, const Modulation& mod,
                             const specfun::SeriesControl& ctl) {
  link.validate();
  const double log_q = std::log(mod.q);
  NestedSeriesSum nested(series_surfaces(link), ctl, [log_q](double s) {
    const double v = 0.5 * (s + 1.0);
    return specfun::ln_gamma(v) - v * log_q;
  });
  auto eval = nested.run();
  const double prefactor = mod.p * std::sqrt(mod.q) / (2.0 * std::sqrt(pi));
  const double value = prefactor * eval.value;
  if (!eval.converged || value < 0.0 || value > 1.0) {
    return {asep_hop_a(link, mod), Route::series_fallback_quadrature, false};
  }
  return {value, Route::series, true};
}

namespace {

// e^{-K0} * [Phi1(1/2,1,1; x, y) - 1F1(1/2;1;y)] through the shared Euler
// integral; exact rewrite of the closed form without the subtraction.
double phi1_minus_1f1_scaled(double k0, double x, double y) {
  auto res = quad::integrate(
      [=](double theta) {
        const double s = std::sin(theta);
        const double t = s * s;
        const double core = x * t / (1.0 - x * t);  // (1-xt)^{-1} - 1
        return (2.0 / pi) * core * std::exp(y * t - k0);
      },
      0.0, 0.5 * pi);
  return res.value;
}

}  // namespace

double asep_hop_b(const snrstats::A2gLink& link, const Modulation& mod) {
  link.validate();
  const double gl = link.avg_snr / link.loss;
  const double denom = mod.q * gl + link.k0 + 1.0;
  const double x = (link.k0 + 1.0) / denom;
  const double y = link.k0 * (link.k0 + 1.0) / denom;
  const double front = 0.5 * mod.p * std::sqrt(mod.q) * std::sqrt(gl / denom);

  if (x >= 0.05 && link.k0 <= 250.0) {
    const double phi1 = specfun::humbert_phi1(0.5, 1.0, 1.0, x, y);
    const double f11 = specfun::hyp1f1(0.5, 1.0, y);
    return clamp_probability(front * std::exp(-link.k0) * (phi1 - f11));
  }
  // High SNR (tiny x) or huge Rician factor: same closed form with the
  // exponent folded into the integral so nothing cancels or overflows.
  return clamp_probability(front * phi1_minus_1f1_scaled(link.k0, x, y));
}

double asep_hop_b_quadrature(const snrstats::A2gLink& link, const Modulation& mod) {
  link.validate();
  const double scale = mod.p * std::sqrt(mod.q) / std::sqrt(pi);
  auto res = quad::integrate_to_infinity(
      [&](double t) {
        const double w = std::exp(-mod.q * t * t);
        return w == 0.0 ? 0.0 : w * snrstats::a2g_cdf(link, t * t);
      },
      0.0);
  return clamp_probability(scale * res.value);
}

double asep_total(double p_a, double p_b) {
  if (p_a < 0.0 || p_a > 1.0 || p_b < 0.0 || p_b > 1.0)
    throw domain_error("asep_total: inputs must be probabilities");
  return p_a + p_b - 2.0 * p_a * p_b;
}

double capacity_from_cdf(const std::function<double(double)>& cdf, double upper) {
  if (!(upper >= 0.0)) throw domain_error("capacity_from_cdf: upper limit must be non-negative");
  if (upper == 0.0) return 0.0;
  // g = e^s - 1 turns (1-F)/(1+g) dg into (1-F(e^s-1)) ds.
  auto res = quad::integrate(
      [&](double s) { return 1.0 - cdf(std::expm1(s)); }, 0.0, std::log1p(upper));
  return std::max(0.0, res.value) / ln2;
}

double capacity_hop_a(const snrstats::G2aLink& link, double phi_scale) {
  link.validate();
  if (!(phi_scale >= 1.0)) throw domain_error("capacity_hop_a: phi_scale must be >= 1");
  const double upper = phi_scale * link.avg_snr * link.avg_snr;
  return capacity_from_cdf([&](double g) { return snrstats::g2a_cdf(link, g); }, upper);
}

namespace {

RouteValue capacity_hop_a_series_impl(const snrstats::G2aLink& link,
                                      const specfun::SeriesControl& ctl,
                                      bool split_kernel) {
  link.validate();
  const double t = link.avg_snr * link.avg_snr;
  NestedSeriesSum nested(series_surfaces(link), ctl, [&, t](double s) {
    const double r = 0.5 * s;
    if (split_kernel && t > 1.0 && std::abs(r - std::round(r)) >= 1e-6) {
      return std::log(specfun::detail::integral_xr_split(r, t, ctl));
    }
    return std::log(specfun::hyp2f1_ratio(r + 1.0, t, ctl));
  });
  auto eval = nested.run();
  RouteValue out;
  out.route = Route::series;
  out.converged = eval.converged;
  out.value = (std::log1p(t) - eval.value) / ln2;
  return out;
}

}  // namespace

RouteValue capacity_hop_a_series(const snrstats::G2aLink& link,
                                 const specfun::SeriesControl& ctl) {
  return capacity_hop_a_series_impl(link, ctl, false);
}

RouteValue capacity_hop_a_series_alt(const snrstats::G2aLink& link,
                                     const specfun::SeriesControl& ctl) {
  return capacity_hop_a_series_impl(link, ctl, true);
}

double capacity_hop_b(const snrstats::A2gLink& link, double phi_scale) {
  link.validate();
  if (!(phi_scale >= 1.0)) throw domain_error("capacity_hop_b: phi_scale must be >= 1");
  const double upper = phi_scale * link.avg_snr * link.avg_snr;
  return capacity_from_cdf([&](double g) { return snrstats::a2g_cdf(link, g); }, upper);
}

RouteValue capacity_hop_b_series(const snrstats::A2gLink& link,
                                 const specfun::SeriesControl& ctl) {
  link.validate();
  const double t = link.avg_snr * link.avg_snr;
  const double rho = (1.0 + link.k0) * link.loss / link.avg_snr;
  const double log_t = std::log1p(t);

  // C = (1/ln2) [ R1 * ln(1+t) + sum_k u_k * A_k ] with
  // u_k = e^{-K0} L_k(K0) rho^{k+1} / (k+1)!  and
  // A_k = (-1)^{k+1} J_{k+1} - ln(1+t),  J_m = int_0^t x^m/(1+x) dx.
  double r1 = 1.0;
  double poly = 0.0;
  double max_term = 0.0;
  bool converged = false;

  double lag_m1 = 0.0, lag = 1.0;          // L_{k-1}(K0), L_k(K0)
  double log_rho_pow = std::log(rho);      // log rho^{k+1}
  double log_fact = 0.0;                   // log (k+1)!
  double j = log_t;                        // J_0
  double t_pow = 1.0;                      // t^m running power
  const int cap = std::min(ctl.max_terms, 100000);
  for (int k = 0; k < cap; ++k) {
    const int m = k + 1;
    log_fact += std::log(static_cast<double>(m));
    t_pow *= t;
    j = t_pow / m - j;  // J_m
    const double u = (lag >= 0.0 ? 1.0 : -1.0) *
                     std::exp(-link.k0 + std::log(std::abs(lag) + 1e-320) +
                              log_rho_pow - log_fact);
    const double a_k = (m % 2 == 0 ? 1.0 : -1.0) * j - log_t;
    const double term = u * a_k;
    if (!std::isfinite(term)) break;
    r1 += u;
    poly += term;
    max_term = std::max(max_term, std::abs(term));
    if (std::abs(term) < ctl.abs_tol +
                             ctl.rel_tol * (std::abs(poly) + std::abs(r1) * log_t) &&
        k > 3) {
      converged = true;
      break;
    }
    // advance Laguerre recurrence to L_{k+1}
    const double next = ((2.0 * k + 1.0 - link.k0) * lag - k * lag_m1) / (k + 1.0);
    lag_m1 = lag;
    lag = next;
    log_rho_pow += std::log(rho);
  }
  if (converged && max_term > 1e8 * std::max(std::abs(poly + r1 * log_t), 1e-280))
    converged = false;

  if (!converged) {
    return {capacity_hop_b(link), Route::series_fallback_quadrature, false};
  }
  return {(r1 * log_t + poly) / ln2, Route::series, true};
}

double capacity_total(double c_a, double c_b) {
  if (!(c_a >= 0.0) || !(c_b >= 0.0))
    throw domain_error("capacity_total: capacities must be non-negative");
  return 0.5 * std::min(c_a, c_b);
}

double split_form_integral(double r, double t, const specfun::SeriesControl& ctl) {
  if (!(r > 0.0)) throw domain_error("split_form_integral: r must be positive");
  if (std::abs(r - std::round(r)) < 1e-6)
    throw domain_error("split_form_integral: r too close to an integer");
  if (!(t > 1.0)) throw domain_error("split_form_integral: t must exceed 1");
  return specfun::detail::integral_xr_split(r, t, ctl);
}

}  // namespace risuav::metrics
