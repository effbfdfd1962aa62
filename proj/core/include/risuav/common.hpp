// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors

#ifndef RISUAV_COMMON_HPP
#define RISUAV_COMMON_HPP

#include <cmath>

namespace risuav {

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double speed_of_light_mps = 299792458.0;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

inline double clamp_probability(double p) {
  if (p < 0.0) return 0.0;
  if (p > 1.0) return 1.0;
  return p;
}

}  // namespace risuav

#endif  // RISUAV_COMMON_HPP
