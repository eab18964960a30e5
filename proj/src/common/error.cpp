#include "bzm/error.hpp"

namespace bzm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_dimension: return "invalid-dimension";
    case ErrorKind::invalid_resolution: return "invalid-resolution";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::component_mismatch: return "component-mismatch";
    case ErrorKind::grid_mismatch: return "grid-mismatch";
    case ErrorKind::empty_block: return "empty-block";
    case ErrorKind::missing_channel: return "missing-channel";
    case ErrorKind::inadmissible_pair: return "inadmissible-pair";
    case ErrorKind::hypothesis_violation: return "hypothesis-violation";
    case ErrorKind::domain_violation: return "domain-violation";
    case ErrorKind::density_out_of_range: return "density-out-of-range";
    case ErrorKind::missing_coefficients: return "missing-coefficients";
    case ErrorKind::non_solenoidal: return "non-solenoidal-u";
    case ErrorKind::insufficient_samples: return "insufficient-samples";
    case ErrorKind::incompatible_eps: return "incompatible-eps";
    case ErrorKind::negative_time: return "negative-time";
    case ErrorKind::unreachable_target: return "unreachable-target";
    case ErrorKind::kappa_degenerate: return "kappa-degenerate";
    case ErrorKind::lambda_degenerate: return "lambda-degenerate";
    case ErrorKind::cfl_violation: return "cfl-violation";
    case ErrorKind::pressure_nonconvergence: return "pressure-nonconvergence";
    case ErrorKind::density_bound_violation: return "density-bound-violation";
    case ErrorKind::config_parse_error: return "config-parse-error";
    case ErrorKind::format_mismatch: return "format-mismatch";
    case ErrorKind::truncated_file: return "truncated-file";
    case ErrorKind::io_error: return "io-error";
  }
  return "unknown";
}

}  // namespace bzm
