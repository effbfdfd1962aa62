// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors
//
// Transmit-power split between the two hops minimizing the high-SNR
// asymptotic total outage c1*Es^(-M/2) + c2*Eu^(-1) under Es + Eu <= E_T.

#ifndef RISUAV_POWOPT_HPP
#define RISUAV_POWOPT_HPP

#include <vector>

#include "risuav/channel.hpp"
#include "risuav/snrstats.hpp"

namespace risuav::powopt {

/// Constants of the asymptotic objective. c1 and c2 are held in log form:
/// large-surface configurations (hundreds of elements) push c1 far below
/// the double underflow threshold while every derived quantity stays
/// perfectly representable.
struct ObjectiveConstants {
  double m_sum = 2.0;    // sum of the per-surface Gamma shapes
  double log_c1 = 0.0;
  double log_c2 = 0.0;

  double c1() const;
  double c2() const;
  /// d = [2 c2 / (M c1)]^(-1/(M/2+1)); always representable.
  double log_d() const;
  double d() const;
};

struct PowerSplit {
  double e_s = 0.0;
  double e_u = 0.0;
  double op_asymptotic = 0.0;
  int iterations = 0;
  bool at_machine_precision = false;  // tolerance below float resolution
};

/// Builds the objective constants from the hop-1 fits and hop-2 parameters.
ObjectiveConstants make_objective_constants(const std::vector<channel::GammaFit>& fits,
                                            double k0, double loss, double gamma_out,
                                            double n0, double n_u);

/// c1*e_s^(-M/2) + c2*e_u^(-1); throws on non-positive powers.
double objective(const ObjectiveConstants& c, double e_s, double e_u);

/// Root of g(x) = x - d*(E_T - x)^(4/(M+2)) on (0, E_T) by bisection.
/// g is strictly increasing with a sign change, so the root is unique.
PowerSplit solve_split(const ObjectiveConstants& c, double e_total, double tol);

/// |d objective/d e_s - d objective/d e_u| / objective; vanishes at the
/// stationary point where the marginal returns equalize.
double kkt_residual(const ObjectiveConstants& c, const PowerSplit& split);

}  // namespace risuav::powopt

#endif  // RISUAV_POWOPT_HPP
