// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors
//
// Special functions used by the closed-form link metrics. Everything here
// is pure and thread-safe; identical inputs give bit-identical outputs.

#ifndef RISUAV_SPECFUN_HPP
#define RISUAV_SPECFUN_HPP

namespace risuav::specfun {

/// Truncation control for the infinite series evaluators.
struct SeriesControl {
  int max_terms = 10000;
  double abs_tol = 1e-300;
  double rel_tol = 1e-12;
};

/// log Gamma(x) for x > 0 (Lanczos).
double ln_gamma(double x);

/// Regularized lower incomplete gamma P(a,x) = gamma(a,x)/Gamma(a).
/// Series for x < a+1, continued fraction otherwise.
double reg_lower_gamma(double a, double x);

/// Regularized upper incomplete gamma Q(a,x) = 1 - P(a,x), computed on the
/// branch that preserves relative accuracy of the small tail.
double reg_upper_gamma(double a, double x);

/// Gaussian tail probability Q(x) = erfc(x/sqrt(2))/2.
double gaussian_q(double x);

/// Modified Bessel function of the first kind, order zero.
double bessel_i0(double x);

/// exp(-|x|) * I0(x); safe for arguments far beyond the overflow point
/// of the unscaled function.
double bessel_i0_scaled(double x);

/// First-order Marcum Q function Q1(a, b).
double marcum_q1(double a, double b);

/// Generalized Laguerre polynomial L_n^(alpha)(x) by the three-term
/// recurrence; exact for polynomial degree n.
double laguerre(int n, double alpha, double x);

/// Integral of x^(mu-1)/(1+x) over [0, u]; equals (u^mu/mu) *
/// 2F1(1, mu; 1+mu; -u). Evaluated through the Pfaff-transformed series in
/// w = u/(1+u) (all-positive terms, convergent for every finite u); huge u
/// switches to the split-at-1 tail series, or to quadrature when mu sits
/// on an integer and the cosecant form poles.
double hyp2f1_ratio(double mu, double u, const SeriesControl& ctl = {});

/// Kummer confluent hypergeometric 1F1(a; b; x). Negative arguments go
/// through the Kummer transform exp(x)*1F1(b-a, b, -x) so the series that
/// actually runs has non-negative terms.
double hyp1f1(double a, double b, double x, const SeriesControl& ctl = {});

/// Humbert Phi1(a, b, c; x, y) confluent hypergeometric of two variables,
/// via its Euler-type integral (valid for c > a > 0, x < 1).
double humbert_phi1(double a, double b, double c, double x, double y);

/// Double power series route for Phi1; reference implementation used to
/// cross-check the integral route (|x| < 1).
double humbert_phi1_series(double a, double b, double c, double x, double y,
                           const SeriesControl& ctl = {});

namespace detail {
/// Split-form evaluation of the integral of x^r/(1+x) over [0, t] for
/// non-integer r and t > 1: sum_k (-1)^k t^(r-k)/(r-k) - pi*csc(pi*r).
double integral_xr_split(double r, double t, const SeriesControl& ctl);
}  // namespace detail

}  // namespace risuav::specfun

#endif  // RISUAV_SPECFUN_HPP
