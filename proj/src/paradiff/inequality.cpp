#include "bzm/paradiff/inequality.hpp"

#include <cmath>
#include <vector>

#include "bzm/besov/norms.hpp"
#include "bzm/error.hpp"
#include "bzm/paradiff/bony.hpp"
#include "bzm/spectral/operators.hpp"

namespace bzm {

namespace {

constexpr std::pair<InequalityId, std::string_view> names[] = {
    {InequalityId::prod_para, "prod_para"},
    {InequalityId::prod_remainder, "prod_remainder"},
    {InequalityId::prod_timedep, "prod_timedep"},
    {InequalityId::comm_basic, "comm_basic"},
    {InequalityId::comm_tilde_41, "comm_tilde_41"},
    {InequalityId::comm_tilde_42_deriv, "comm_tilde_42_deriv"},
    {InequalityId::prod_lemma_42, "prod_lemma_42"},
};

[[noreturn]] void violated(const std::string& what) { throw Error(ErrorKind::hypothesis_violation, what); }

// Time integral over the stored samples; one sample means "the integrand".
double integrate(const std::vector<double>& t, const std::vector<double>& g) {
  if (t.size() == 1) return g[0];
  return time_lq_norm(t, g, 1.0);
}

double sup(const std::vector<double>& g) {
  double m = 0.0;
  for (double v : g) m = std::max(m, std::abs(v));
  return m;
}

// ~L^1_t(B) norm of a derived channel.
double tilde_l1(const Trajectory& traj, const std::string& channel, const BesovParams& bp) {
  if (traj.size() == 1) return besov_norm(traj.at(0, channel), bp);
  return chemin_lerner_norm(traj, channel, 1.0, bp);
}

// Per-sample l^r of 2^{js} ||X_j||_{L^p} where X_j is built by `make`.
template <class Make>
std::vector<std::vector<double>> block_profile(const Trajectory& traj, const ProbeParameters& pp, Make&& make) {
  std::vector<std::vector<double>> out(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const Field& a = traj.at(i, "a");
    const Field& b = traj.at(i, "b");
    for (int j = -1; j <= a.grid().max_block(); ++j) {
      out[i].push_back(std::exp2(j * pp.s) * make(a, j, b));
    }
  }
  return out;
}

double ratio_of(double lhs, const std::map<std::string, double>& rhs) {
  double sum = 0.0;
  for (const auto& [k, v] : rhs) sum += v;
  if (sum > 0.0) return lhs / sum;
  return lhs == 0.0 ? 0.0 : inf;
}

void check_exponents(const ProbeParameters& pp) {
  if (!(pp.p >= 1.0) || !(pp.r >= 1.0)) violated("(p, r) must lie in [1, inf]^2");
}

void check_split(double total, double a1, double a2, double w, const char* what) {
  if (!(w > 0.0 && w <= 1.0)) violated(std::string(what) + " weight must lie in (0, 1]");
  const double mix = w * a1 + (1.0 - w) * a2;
  if (std::abs(mix - total) > 1e-12 * (1.0 + std::abs(total))) {
    violated(std::string("index relation for ") + what + " does not hold");
  }
}

double weighted_time_term(double w, double eps) { return w * std::pow(eps, -(1.0 - w) / w); }

}  // namespace

std::string_view to_string(InequalityId id) {
  for (const auto& [k, v] : names) {
    if (k == id) return v;
  }
  return "unknown";
}

InequalityId inequality_from_string(std::string_view name) {
  for (const auto& [k, v] : names) {
    if (v == name) return k;
  }
  throw Error(ErrorKind::invalid_argument, "unknown inequality id '" + std::string(name) + "'");
}

double complementary_index(double s_total, double s1, double theta) {
  if (!(theta < 1.0)) throw Error(ErrorKind::invalid_argument, "theta must be < 1");
  return (s_total - theta * s1) / (1.0 - theta);
}

InequalityReport inequality_probe(InequalityId id, const Field& a, const Field& b, const ProbeParameters& params) {
  Trajectory t(a.grid());
  t.append(0.0, {{"a", a}, {"b", b}});
  return inequality_probe(id, t, params);
}

InequalityReport inequality_probe(InequalityId id, const Trajectory& traj, const ProbeParameters& pp) {
  check_exponents(pp);
  if (!traj.has_channel("a") || !traj.has_channel("b")) {
    throw Error(ErrorKind::missing_channel, "probe inputs need channels 'a' and 'b'");
  }
  const int d = traj.grid().dim();
  const double ip = BesovParams::inv(pp.p);
  const std::vector<double>& times = traj.times();
  const std::size_t n = traj.size();
  InequalityReport rep;
  rep.id = id;
  rep.parameters = pp;

  auto per_sample = [&](auto&& fn) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = fn(traj.at(i, "a"), traj.at(i, "b"));
    return v;
  };

  switch (id) {
    case InequalityId::prod_para: {
      const Field& u = traj.at(0, "a");
      const Field& v = traj.at(0, "b");
      const BesovParams bp{pp.s, pp.p, pp.r};
      rep.lhs = besov_norm(paraproduct(u, v), bp);
      rep.rhs_terms["u_linf*v_besov"] = lebesgue_norm(u, inf) * besov_norm(v, bp);
      break;
    }
    case InequalityId::prod_remainder: {
      if (!(pp.s1 + pp.s2 + d * std::min(0.0, 1.0 - 2.0 * ip) > 0.0)) {
        violated("s1 + s2 + d min(0, 1 - 2/p) > 0");
      }
      const Field& u = traj.at(0, "a");
      const Field& v = traj.at(0, "b");
      rep.lhs = besov_norm(remainder(u, v), {pp.s1 + pp.s2 - d * ip, pp.p, pp.r});
      rep.rhs_terms["u_besov_s1*v_besov_s2"] =
          besov_norm(u, {pp.s1, pp.p, pp.r}) * besov_norm(v, {pp.s2, pp.p, pp.r});
      break;
    }
    case InequalityId::prod_timedep: {
      if (!(pp.s > 0.0)) violated("s > 0");
      const BesovParams bp{pp.s, pp.p, pp.r};
      Trajectory prod(traj.grid());
      for (std::size_t i = 0; i < n; ++i) {
        prod.append(times[i], {{"uv", multiply(traj.at(i, "a"), traj.at(i, "b"))},
                               {"a", traj.at(i, "a")},
                               {"b", traj.at(i, "b")}});
      }
      rep.lhs = tilde_l1(prod, "uv", bp);
      const double ua = sup(per_sample([](const Field& a, const Field&) { return lebesgue_norm(a, inf); }));
      const double vb = sup(per_sample([](const Field&, const Field& b) { return lebesgue_norm(b, inf); }));
      rep.rhs_terms["u_linf*v_tilde"] = ua * tilde_l1(prod, "b", bp);
      rep.rhs_terms["u_tilde*v_linf"] = tilde_l1(prod, "a", bp) * vb;
      break;
    }
    case InequalityId::comm_basic: {
      if (!(pp.s > -d * std::min(ip, 1.0 - ip))) violated("s > -d min(1/p, 1/p')");
      if (pp.s == 1.0 + d * ip && pp.r != 1.0) violated("r = 1 when s = 1 + d/p");
      const auto prof = block_profile(traj, pp, [&](const Field& a, int j, const Field& b) {
        return lebesgue_norm(commutator(a, j, b), pp.p);
      });
      std::vector<double> lhs(n);
      for (std::size_t i = 0; i < n; ++i) lhs[i] = lr_sum(prof[i], pp.r);
      rep.lhs = integrate(times, lhs);
      rep.rhs_terms["grad_phi*grad_psi"] = integrate(times, per_sample([&](const Field& a, const Field& b) {
        const Field ga = gradient(a);
        return (besov_norm(ga, {d * ip, pp.p, 1.0}) + besov_norm(ga, {pp.s - 1.0, pp.p, pp.r})) *
               besov_norm(gradient(b), {pp.s - 1.0, pp.p, pp.r});
      }));
      break;
    }
    case InequalityId::comm_tilde_41: {
      if (!(pp.s > 0.0)) violated("s > 0");
      const auto prof = block_profile(traj, pp, [&](const Field& a, int j, const Field& b) {
        return lebesgue_norm(commutator(a, j, b), pp.p);
      });
      std::vector<double> lhs(n);
      for (std::size_t i = 0; i < n; ++i) lhs[i] = lr_sum(prof[i], pp.r);
      rep.lhs = integrate(times, lhs);
      rep.rhs_terms["grad_phi_linf*psi_besov"] = integrate(times, per_sample([&](const Field& a, const Field& b) {
        return lebesgue_norm(gradient(a), inf) * besov_norm(b, {pp.s, pp.p, pp.r});
      }));
      rep.rhs_terms["grad_phi_besov*grad_psi_linf"] = integrate(times, per_sample([&](const Field& a, const Field& b) {
        return besov_norm(gradient(a), {pp.s - 1.0, pp.p, pp.r}) * lebesgue_norm(gradient(b), inf);
      }));
      break;
    }
    case InequalityId::comm_tilde_42_deriv: {
      if (!(pp.s > 0.0)) violated("s > 0");
      if (!(pp.eps > 0.0)) violated("eps > 0");
      check_split(pp.s + 1.0, pp.s1, pp.s2, pp.theta, "theta");
      check_split(pp.s + 1.0, pp.sigma1, pp.sigma2, pp.eta, "eta");
      const auto prof = block_profile(traj, pp, [&](const Field& a, int j, const Field& b) {
        const auto rows = commutator_gradient(a, j, b);
        Field all(a.grid(), 1);
        auto z = all.samples_mut();
        for (const Field& r : rows) {
          const Field m = magnitude(r);
          auto x = m.samples();
          for (std::size_t k = 0; k < z.size(); ++k) z[k] += x[k] * x[k];
        }
        for (auto& v : z) v = std::sqrt(v);
        return lebesgue_norm(all, pp.p);
      });
      std::vector<double> per_block;
      for (std::size_t jb = 0; jb < prof[0].size(); ++jb) {
        std::vector<double> g(n);
        for (std::size_t i = 0; i < n; ++i) g[i] = prof[i][jb];
        per_block.push_back(integrate(times, g));
      }
      rep.lhs = lr_sum(per_block, pp.r);
      rep.rhs_terms["theta_term"] =
          weighted_time_term(pp.theta, pp.eps) * integrate(times, per_sample([&](const Field& a, const Field& b) {
            return std::pow(lebesgue_norm(gradient(a), inf), 1.0 / pp.theta) * besov_norm(b, {pp.s1, pp.p, pp.r});
          }));
      rep.rhs_terms["eta_term"] =
          weighted_time_term(pp.eta, pp.eps) * integrate(times, per_sample([&](const Field& a, const Field& b) {
            return std::pow(lebesgue_norm(gradient(b), inf), 1.0 / pp.eta) *
                   besov_norm(gradient(a), {pp.sigma1 - 1.0, pp.p, pp.r});
          }));
      Trajectory aux(traj.grid());
      for (std::size_t i = 0; i < n; ++i) {
        aux.append(times[i], {{"psi", traj.at(i, "b")}, {"grad_phi", gradient(traj.at(i, "a"))}});
      }
      rep.rhs_terms["theta_eps_term"] = (1.0 - pp.theta) * pp.eps * tilde_l1(aux, "psi", {pp.s2, pp.p, pp.r});
      rep.rhs_terms["eta_eps_term"] =
          (1.0 - pp.eta) * pp.eps * tilde_l1(aux, "grad_phi", {pp.sigma2 - 1.0, pp.p, pp.r});
      break;
    }
    case InequalityId::prod_lemma_42: {
      if (!(pp.s > 0.0)) violated("s > 0");
      if (!(pp.eps > 0.0)) violated("eps > 0");
      check_split(pp.s, pp.s1, pp.s2, pp.theta, "theta");
      check_split(pp.s, pp.sigma1, pp.sigma2, pp.eta, "eta");
      Trajectory prod(traj.grid());
      for (std::size_t i = 0; i < n; ++i) {
        prod.append(times[i], {{"fg", multiply(traj.at(i, "a"), traj.at(i, "b"))},
                               {"a", traj.at(i, "a")},
                               {"b", traj.at(i, "b")}});
      }
      rep.lhs = tilde_l1(prod, "fg", {pp.s, pp.p, pp.r});
      // The theta pair interpolates g's regularity and the eta pair f's,
      // as Young's inequality applied to T_f g and T_g f requires.
      rep.rhs_terms["theta_term"] =
          weighted_time_term(pp.theta, pp.eps) * integrate(times, per_sample([&](const Field& f, const Field& g) {
            return std::pow(lebesgue_norm(f, inf), 1.0 / pp.theta) * besov_norm(g, {pp.s1, pp.p, pp.r});
          }));
      rep.rhs_terms["eta_term"] =
          weighted_time_term(pp.eta, pp.eps) * integrate(times, per_sample([&](const Field& f, const Field& g) {
            return std::pow(lebesgue_norm(g, inf), 1.0 / pp.eta) * besov_norm(f, {pp.sigma1, pp.p, pp.r});
          }));
      rep.rhs_terms["theta_eps_term"] = (1.0 - pp.theta) * pp.eps * tilde_l1(prod, "b", {pp.s2, pp.p, pp.r});
      rep.rhs_terms["eta_eps_term"] = (1.0 - pp.eta) * pp.eps * tilde_l1(prod, "a", {pp.sigma2, pp.p, pp.r});
      break;
    }
  }
  rep.ratio = ratio_of(rep.lhs, rep.rhs_terms);
  return rep;
}

}  // namespace bzm
