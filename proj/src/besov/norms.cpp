#include "bzm/besov/norms.hpp"

#include <algorithm>
#include <cmath>

#include "bzm/error.hpp"
#include "bzm/parallel.hpp"
#include "bzm/spectral/littlewood_paley.hpp"
#include "bzm/spectral/operators.hpp"

namespace bzm {

namespace {

void check_exponent(double x, const char* what) {
  if (!(x >= 1.0)) throw Error(ErrorKind::invalid_argument, std::string(what) + " must lie in [1, inf]");
}

// ||Delta_j f_c||_{L^p} for j = -1..max_block.
std::vector<double> block_lp_norms(const Field& f, int c, double p) {
  const Field comp = f.component(c);
  const int jmax = f.grid().max_block();
  std::vector<double> out(static_cast<std::size_t>(jmax + 2));
  for (int j = -1; j <= jmax; ++j) {
    out[static_cast<std::size_t>(j + 1)] = sample_lp_norm(dyadic_block(comp, j).samples(), p);
  }
  return out;
}

double block_weight(int j, double s) { return std::exp2(j * s); }

}  // namespace

double lebesgue_norm(const Field& f, double p) {
  check_exponent(p, "p");
  if (f.components() == 1) return sample_lp_norm(f.samples(), p);
  return sample_lp_norm(magnitude(f).samples(), p);
}

double lr_sum(std::span<const double> a, double r) {
  check_exponent(r, "r");
  if (std::isinf(r)) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
  }
  double sum = 0.0;
  if (r == 1.0) {
    for (double v : a) sum += std::abs(v);
    return sum;
  }
  for (double v : a) sum += std::pow(std::abs(v), r);
  return std::pow(sum, 1.0 / r);
}

std::vector<double> weighted_block_norms(const Field& f, int c, const BesovParams& params) {
  check_exponent(params.p, "p");
  auto norms = block_lp_norms(f, c, params.p);
  for (std::size_t i = 0; i < norms.size(); ++i) norms[i] *= block_weight(static_cast<int>(i) - 1, params.s);
  return norms;
}

double besov_norm(const Field& f, const BesovParams& params) {
  check_exponent(params.r, "r");
  std::vector<double> per_component;
  for (int c = 0; c < f.components(); ++c) {
    per_component.push_back(lr_sum(weighted_block_norms(f, c, params), params.r));
  }
  return f.components() == 1 ? per_component[0] : lr_sum(per_component, params.r);
}

double time_lq_norm(std::span<const double> t, std::span<const double> g, double q) {
  check_exponent(q, "q");
  if (t.size() != g.size() || t.empty()) throw Error(ErrorKind::insufficient_samples, "time series is empty");
  if (std::isinf(q)) {
    double m = 0.0;
    for (double v : g) m = std::max(m, std::abs(v));
    return m;
  }
  double sum = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double a = q == 1.0 ? std::abs(g[i - 1]) : std::pow(std::abs(g[i - 1]), q);
    const double b = q == 1.0 ? std::abs(g[i]) : std::pow(std::abs(g[i]), q);
    sum += 0.5 * (t[i] - t[i - 1]) * (a + b);
  }
  return q == 1.0 ? sum : std::pow(sum, 1.0 / q);
}

double chemin_lerner_norm(const Trajectory& traj, const std::string& channel, double q,
                          const BesovParams& params, std::size_t last) {
  check_exponent(q, "q");
  check_exponent(params.p, "p");
  check_exponent(params.r, "r");
  if (!traj.has_channel(channel)) {
    throw Error(ErrorKind::missing_channel, "trajectory has no channel '" + channel + "'");
  }
  const std::size_t n = std::min(last == all_samples ? traj.size() : last + 1, traj.size());
  const int comps = traj.at(0, channel).components();
  // norms[i][c] = block L^p norms at sample i, component c
  std::vector<std::vector<std::vector<double>>> norms(n);
  parallel_for(n, [&](std::size_t i) {
    const Field& f = traj.at(i, channel);
    for (int c = 0; c < comps; ++c) norms[i].push_back(block_lp_norms(f, c, params.p));
  });
  const std::span<const double> t(traj.times().data(), n);
  std::vector<double> per_component;
  for (int c = 0; c < comps; ++c) {
    const std::size_t nb = norms[0][c].size();
    std::vector<double> weighted(nb), series(n);
    for (std::size_t b = 0; b < nb; ++b) {
      for (std::size_t i = 0; i < n; ++i) series[i] = norms[i][c][b];
      weighted[b] = block_weight(static_cast<int>(b) - 1, params.s) * time_lq_norm(t, series, q);
    }
    per_component.push_back(lr_sum(weighted, params.r));
  }
  return comps == 1 ? per_component[0] : lr_sum(per_component, params.r);
}

double time_besov_norm(const Trajectory& traj, const std::string& channel, double q,
                       const BesovParams& params, std::size_t last) {
  if (!traj.has_channel(channel)) {
    throw Error(ErrorKind::missing_channel, "trajectory has no channel '" + channel + "'");
  }
  const std::size_t n = std::min(last == all_samples ? traj.size() : last + 1, traj.size());
  std::vector<double> values(n);
  parallel_for(n, [&](std::size_t i) { values[i] = besov_norm(traj.at(i, channel), params); });
  return time_lq_norm(std::span<const double>(traj.times().data(), n), values, q);
}

double sampling_self_check(const Trajectory& traj, const std::string& channel, double q,
                           const BesovParams& params) {
  if (traj.size() < 3 || traj.size() % 2 == 0) {
    throw Error(ErrorKind::insufficient_samples, "self-check needs an odd sample count >= 3");
  }
  const double fine = chemin_lerner_norm(traj, channel, q, params);
  const double coarse = chemin_lerner_norm(traj.subsample(2), channel, q, params);
  if (fine == 0.0) return coarse == 0.0 ? 0.0 : inf;
  return std::abs(fine - coarse) / fine;
}

EmbeddingReport embedding_probe(std::span<const Field> ensemble, const BesovParams& a,
                                const BesovParams& b) {
  if (ensemble.empty()) throw Error(ErrorKind::insufficient_samples, "empty ensemble");
  const int d = ensemble[0].grid().dim();
  const double shift = a.s - d * BesovParams::inv(a.p) + d * BesovParams::inv(b.p);
  const bool ok = a.p <= b.p && (b.s < shift || (b.s == shift && a.r <= b.r));
  if (!ok) {
    throw Error(ErrorKind::inadmissible_pair,
                "embedding needs p1 <= p2 and s2 < s1 - d/p1 + d/p2 (or equality with r1 <= r2)");
  }
  EmbeddingReport rep;
  rep.ratios.resize(ensemble.size());
  parallel_for(ensemble.size(), [&](std::size_t i) {
    const double den = besov_norm(ensemble[i], a);
    rep.ratios[i] = den > 0.0 ? besov_norm(ensemble[i], b) / den : 0.0;
  });
  rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
  return rep;
}

EmbeddingReport linf_embedding_probe(std::span<const Field> ensemble, const BesovParams& params) {
  if (ensemble.empty()) throw Error(ErrorKind::insufficient_samples, "empty ensemble");
  const int d = ensemble[0].grid().dim();
  const double crit = d * BesovParams::inv(params.p);
  if (!(params.s > crit || (params.s == crit && params.r == 1.0))) {
    throw Error(ErrorKind::inadmissible_pair, "L^inf embedding needs s > d/p or s = d/p with r = 1");
  }
  EmbeddingReport rep;
  rep.ratios.resize(ensemble.size());
  parallel_for(ensemble.size(), [&](std::size_t i) {
    const double den = besov_norm(ensemble[i], params);
    rep.ratios[i] = den > 0.0 ? lebesgue_norm(ensemble[i], inf) / den : 0.0;
  });
  rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
  return rep;
}

InterpolationChain interpolation_chain(const Trajectory& traj, const std::string& channel, double s,
                                       double p, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::invalid_argument, "eps must be positive");
  InterpolationChain c;
  c.plain = time_besov_norm(traj, channel, 1.0, {s, p, 1.0});
  c.middle = chemin_lerner_norm(traj, channel, 1.0, {s + 0.5 * eps, p, 1.0});
  c.outer = chemin_lerner_norm(traj, channel, 1.0, {s + eps, p, inf});
  c.c1 = std::exp2(0.5 * eps);
  c.c2 = std::exp2(0.5 * eps) / (1.0 - std::exp2(-0.5 * eps));
  const double slack = 1.0 + 1e-12;
  c.holds = c.plain <= c.c1 * c.middle * slack && c.middle <= c.c2 * c.outer * slack;
  return c;
}

}  // namespace bzm
