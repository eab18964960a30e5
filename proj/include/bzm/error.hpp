#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bzm {

enum class ErrorKind {
  invalid_dimension,
  invalid_resolution,
  invalid_argument,
  component_mismatch,
  grid_mismatch,
  empty_block,
  missing_channel,
  inadmissible_pair,
  hypothesis_violation,
  domain_violation,
  density_out_of_range,
  missing_coefficients,
  non_solenoidal,
  insufficient_samples,
  incompatible_eps,
  negative_time,
  unreachable_target,
  kappa_degenerate,
  lambda_degenerate,
  cfl_violation,
  pressure_nonconvergence,
  density_bound_violation,
  config_parse_error,
  format_mismatch,
  truncated_file,
  io_error,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-readable kind next to the human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bzm
