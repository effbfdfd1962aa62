// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors

#include "risuav/powopt.hpp"

#include <cmath>

#include "risuav/errors.hpp"
#include "risuav/specfun.hpp"

namespace risuav::powopt {

double ObjectiveConstants::c1() const { return std::exp(log_c1); }
double ObjectiveConstants::c2() const { return std::exp(log_c2); }

double ObjectiveConstants::log_d() const {
  return -(std::log(2.0) + log_c2 - std::log(m_sum) - log_c1) / (0.5 * m_sum + 1.0);
}

double ObjectiveConstants::d() const { return std::exp(log_d()); }

ObjectiveConstants make_objective_constants(const std::vector<channel::GammaFit>& fits,
                                            double k0, double loss, double gamma_out,
                                            double n0, double n_u) {
  if (fits.empty()) throw domain_error("objective constants: at least one surface required");
  if (!(k0 > 0.0) || !(loss > 0.0) || !(gamma_out > 0.0) || !(n0 > 0.0) || !(n_u > 0.0))
    throw domain_error("objective constants: parameters must be positive");

  ObjectiveConstants c;
  c.m_sum = 0.0;
  double log_c1 = 0.0;
  for (const auto& f : fits) {
    if (!(f.shape > 0.0) || !(f.scale > 0.0) || !(f.path_loss > 0.0))
      throw domain_error("objective constants: invalid Gamma fit");
    c.m_sum += f.shape;
    // (scale^2 Gamma(a)^{2/a} / (g_out PL))^(-a/2)
    const double log_base = 2.0 * std::log(f.scale) +
                            (2.0 / f.shape) * specfun::ln_gamma(f.shape) -
                            std::log(gamma_out) - std::log(f.path_loss);
    log_c1 += -0.5 * f.shape * log_base;
  }
  c.log_c1 = log_c1 + 0.5 * c.m_sum * std::log(n0);
  c.log_c2 = std::log(n_u) - k0 + std::log1p(k0) + std::log(gamma_out) + std::log(loss);
  return c;
}

double objective(const ObjectiveConstants& c, double e_s, double e_u) {
  if (!(e_s > 0.0) || !(e_u > 0.0))
    throw domain_error("objective: powers must be positive");
  return std::exp(c.log_c1 - 0.5 * c.m_sum * std::log(e_s)) +
         std::exp(c.log_c2 - std::log(e_u));
}

PowerSplit solve_split(const ObjectiveConstants& c, double e_total, double tol) {
  if (!(e_total > 0.0)) throw domain_error("solve_split: budget must be positive");
  if (!(tol > 0.0)) throw domain_error("solve_split: tolerance must be positive");

  const double d = c.d();
  const double expo = 4.0 / (c.m_sum + 2.0);
  auto g = [&](double x) { return x - d * std::pow(e_total - x, expo); };

  double lo = 0.0;
  double hi = e_total;
  double x = 0.5 * e_total;
  double gx = g(x);
  PowerSplit out;
  for (int it = 1; it <= 200; ++it) {
    out.iterations = it;
    if (std::abs(gx) <= tol) break;
    if (gx > 0.0)
      hi = x;
    else
      lo = x;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      out.at_machine_precision = true;  // interval hit float resolution
      break;
    }
    x = mid;
    gx = g(x);
  }
  if (std::abs(gx) > tol && !out.at_machine_precision && out.iterations >= 200)
    out.at_machine_precision = true;

  out.e_s = x;
  out.e_u = e_total - x;
  out.op_asymptotic = objective(c, out.e_s, out.e_u);
  return out;
}

double kkt_residual(const ObjectiveConstants& c, const PowerSplit& split) {
  if (!(split.e_s > 0.0) || !(split.e_u > 0.0))
    throw domain_error("kkt_residual: interior split required");
  const double d_s = -0.5 * c.m_sum *
                     std::exp(c.log_c1 - (0.5 * c.m_sum + 1.0) * std::log(split.e_s));
  const double d_u = -std::exp(c.log_c2 - 2.0 * std::log(split.e_u));
  const double obj = objective(c, split.e_s, split.e_u);
  return std::abs(d_s - d_u) / obj;
}

}  // namespace risuav::powopt
