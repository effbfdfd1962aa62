// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 risuav contributors

#ifndef RISUAV_ERRORS_HPP
#define RISUAV_ERRORS_HPP

#include <limits>
#include <stdexcept>
#include <string>

namespace risuav {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A computation failed to reach its accuracy target. Carries the best
/// value obtained so far, when one exists.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& msg,
                         double partial = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(msg), partial_value(partial) {}

  double partial_value;
};

/// Configuration parse/validation failure. `field` is the offending path,
/// e.g. "ris[1].n_elements".
class config_error : public std::runtime_error {
 public:
  config_error(std::string field_path, const std::string& msg)
      : std::runtime_error(field_path.empty() ? msg : field_path + ": " + msg),
        field(std::move(field_path)) {}

  std::string field;
};

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace risuav

#endif  // RISUAV_ERRORS_HPP
