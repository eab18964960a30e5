#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "bzm/besov/besov_params.hpp"
#include "bzm/besov/trajectory.hpp"
#include "bzm/spectral/field.hpp"

namespace bzm {

inline constexpr std::size_t all_samples = std::numeric_limits<std::size_t>::max();

/// Unit-volume grid L^p norm; vector fields use the pointwise Euclidean norm.
double lebesgue_norm(const Field& f, double p);

/// l^r combination of a sequence (max for r = inf).
double lr_sum(std::span<const double> a, double r);

/// Weighted block norms 2^{js} ||Delta_j f_c||_{L^p} for j = -1..max_block
/// of one component.
std::vector<double> weighted_block_norms(const Field& f, int c, const BesovParams& params);

/// Inhomogeneous Besov norm; vector fields combine per-component norms in l^r.
double besov_norm(const Field& f, const BesovParams& params);

/// Composite trapezoid of g over t (or max |g| when q = inf) giving ||g||_{L^q}.
double time_lq_norm(std::span<const double> t, std::span<const double> g, double q);

/// Chemin-Lerner norm: L^q in time per block, then l^r over blocks. Uses
/// samples 0..last.
double chemin_lerner_norm(const Trajectory& traj, const std::string& channel, double q,
                          const BesovParams& params, std::size_t last = all_samples);

/// Plain L^q_T(B^s_{p,r}) norm: Besov norm at each time, then L^q in time.
double time_besov_norm(const Trajectory& traj, const std::string& channel, double q,
                       const BesovParams& params, std::size_t last = all_samples);

/// Relative change of the Chemin-Lerner norm when every other sample is
/// dropped; needs an odd number of samples.
double sampling_self_check(const Trajectory& traj, const std::string& channel, double q,
                           const BesovParams& params);

struct EmbeddingReport {
  std::vector<double> ratios;  // per ensemble member
  double max_ratio = 0.0;
};

/// Measures ||f||_{params2} / ||f||_{params1} over an ensemble. Throws
/// Error(inadmissible_pair) unless B(params1) embeds in B(params2).
EmbeddingReport embedding_probe(std::span<const Field> ensemble, const BesovParams& params1,
                                const BesovParams& params2);

/// Measures ||f||_{L^inf} / ||f||_{params} over an ensemble; requires
/// s > d/p or s = d/p with r = 1.
EmbeddingReport linf_embedding_probe(std::span<const Field> ensemble, const BesovParams& params);

/// The chain ||f||_{L^1_t B^s_{p,1}} <= C1 ||f||_{~L^1_t B^{s+e/2}_{p,1}}
/// <= C2 ||f||_{~L^1_t B^{s+e}_{p,inf}} with C1 = 2^{e/2} and
/// C2 = 2^{e/2} / (1 - 2^{-e/2}), the constants of the discrete sums.
struct InterpolationChain {
  double plain = 0.0;
  double middle = 0.0;
  double outer = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  bool holds = false;
};
InterpolationChain interpolation_chain(const Trajectory& traj, const std::string& channel, double s,
                                       double p, double eps);

}  // namespace bzm
