#pragma once

#include <array>
#include <vector>

#include "bzm/spectral/field.hpp"

namespace bzm {

// All products below are dealiased: factors and result are truncated by the
// 2/3 rule, which makes the Bony splitting exact up to roundoff. Either
// argument may be a vector field when the other is a scalar.

/// T_u v = sum_j S_{j-1}u Delta_j v.
Field paraproduct(const Field& u, const Field& v);
/// R(u, v) = sum_j sum_{|j'-j| <= 1} Delta_j u Delta_j' v.
Field remainder(const Field& u, const Field& v);
/// T'_u v = sum_k S_{k+2}u Delta_k v, i.e. T_u v + R(u, v).
Field paraproduct_wide(const Field& u, const Field& v);

/// [phi, Delta_j] grad psi = phi Delta_j grad psi - Delta_j(phi grad psi).
Field commutator(const Field& phi, int j, const Field& psi);
/// grad of the commutator, as a d*d-component set (row a holds d/dx_a).
std::vector<Field> commutator_gradient(const Field& phi, int j, const Field& psi);

/// R^1..R^5 with phi~ = phi - Delta_{-1} phi:
///   R1 = [T_phi~, Delta_j] grad psi       R2 = T'_{Delta_j grad psi} phi~
///   R3 = -Delta_j T_{grad psi} phi~       R4 = -Delta_j R(phi~, grad psi)
///   R5 = [Delta_{-1} phi, Delta_j] grad psi
/// Their sum is the commutator.
std::array<Field, 5> commutator_decomposition(const Field& phi, int j, const Field& psi);

/// theta eps^{-(1-theta)/theta} a^{1/theta} + (1 - theta) eps b^{1/(1-theta)},
/// an upper bound for a*b. Throws Error(domain_violation) outside
/// a, b >= 0, theta in (0, 1), eps > 0.
double young_split(double a, double b, double theta, double eps);

}  // namespace bzm
