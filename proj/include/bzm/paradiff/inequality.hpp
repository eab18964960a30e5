#pragma once

#include <map>
#include <string>
#include <string_view>

#include "bzm/besov/besov_params.hpp"
#include "bzm/besov/trajectory.hpp"

namespace bzm {

enum class InequalityId {
  prod_para,
  prod_remainder,
  prod_timedep,
  comm_basic,
  comm_tilde_41,
  comm_tilde_42_deriv,
  prod_lemma_42,
};

std::string_view to_string(InequalityId id);
/// Throws Error(invalid_argument) for unknown names.
InequalityId inequality_from_string(std::string_view name);

/// Indices of the estimates. Unused entries are ignored by a given id.
struct ProbeParameters {
  double s = 1.0;
  double p = 2.0;
  double r = 1.0;
  double s1 = 1.0, s2 = 1.0;
  double sigma1 = 1.0, sigma2 = 1.0;
  double theta = 0.5, eta = 0.5;
  double eps = 1.0;
};

struct InequalityReport {
  InequalityId id{};
  double lhs = 0.0;
  std::map<std::string, double> rhs_terms;
  double ratio = 0.0;  // lhs / sum of rhs terms, constants set to 1
  ProbeParameters parameters;
};

/// Measures both sides of the named estimate. Inputs are the scalar channels
/// "a" and "b" (u and v, phi and psi, f and g). Time integrals use the
/// stored samples; a single-sample trajectory turns every time integral into
/// the value of its integrand. Throws Error(hypothesis_violation) naming the
/// violated condition.
InequalityReport inequality_probe(InequalityId id, const Trajectory& inputs, const ProbeParameters& params);
InequalityReport inequality_probe(InequalityId id, const Field& a, const Field& b, const ProbeParameters& params);

/// s2 solving s_total = theta s1 + (1 - theta) s2; needs theta < 1.
double complementary_index(double s_total, double s1, double theta);

}  // namespace bzm
