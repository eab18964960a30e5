#include "bzm/cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include <json.hpp>

#include "bzm/besov/norms.hpp"
#include "bzm/cli/experiments.hpp"
#include "bzm/cli/field_io.hpp"
#include "bzm/error.hpp"
#include "bzm/model/residual.hpp"
#include "bzm/parallel.hpp"
#include "bzm/spectral/littlewood_paley.hpp"
#include "bzm/spectral/operators.hpp"

namespace bzm {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

constexpr const char* version = "1.0.0";

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// json cannot hold non-finite numbers; they go out as strings.
json num(double x) { return std::isfinite(x) ? json(x) : json(fmt(x)); }

class Csv {
 public:
  Csv(const fs::path& path, const std::vector<std::string>& header) : out_(path) {
    if (!out_) throw Error(ErrorKind::io_error, "cannot write " + path.string());
    row(header);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }
  void row(const std::vector<double>& cells) {
    std::vector<std::string> s;
    for (double x : cells) s.push_back(fmt(x));
    row(s);
  }

 private:
  std::ofstream out_;
};

struct Run {
  Config& cfg;
  std::uint64_t seed;
  fs::path out;
  json summary = json::object();
  std::vector<std::string> outputs;
  int exit_code = 0;

  fs::path file(const std::string& name) {
    outputs.push_back(name);
    return out / name;
  }
};

void cmd_decompose(Run& r) {
  const Grid g = grid_from(r.cfg);
  const Field f = scalar_profile(r.cfg, "field", g, r.seed);
  const BesovParams bp = besov_from(r.cfg, g.dim());
  const auto blocks = block_decomposition(f);
  Field sum = Field::scalar(g);
  Csv csv(r.file("blocks.csv"), {"j", "l2", "linf", "weighted"});
  const auto weighted = weighted_block_norms(f, 0, bp);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    sum += blocks[i];
    csv.row({static_cast<double>(i) - 1.0, lebesgue_norm(blocks[i], 2.0), lebesgue_norm(blocks[i], inf),
             i < weighted.size() ? weighted[i] : 0.0});
  }
  r.summary["blocks"] = blocks.size();
  r.summary["reconstruction_error"] = num(lebesgue_norm(sum - f, inf));
  if (r.cfg.flag("output.fields", false)) {
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      write_field(r.file("block_" + std::to_string(static_cast<int>(i) - 1) + ".bzmf").string(), blocks[i]);
    }
  }
}

void cmd_norm(Run& r) {
  const Grid g = grid_from(r.cfg);
  const Field f = scalar_profile(r.cfg, "field", g, r.seed);
  const BesovParams bp = besov_from(r.cfg, g.dim());
  Csv csv(r.file("norm.csv"), {"s", "p", "r", "besov", "lebesgue"});
  const double b = besov_norm(f, bp);
  csv.row({bp.s, bp.p, bp.r, b, lebesgue_norm(f, bp.p)});
  r.summary["besov"] = num(b);
}

void cmd_bony(Run& r) {
  const int samples = static_cast<int>(r.cfg.integer("ensemble.samples", 32));
  const auto ns = r.cfg.integers("ensemble.n", {64, 128});
  const int d = static_cast<int>(r.cfg.integer("grid.d", 2));
  const double frac = r.cfg.number("ensemble.kmax_fraction", 1.0 / 3.0);
  Csv csv(r.file("bony.csv"), {"n", "sample", "defect"});
  double worst = 0.0;
  for (int n : ns) {
    const Grid g = Grid::make(d, n);
    std::vector<double> defect(samples);
    parallel_for(samples, [&](std::size_t i) {
      Rng rng = member_rng(r.seed, i);
      RandomFieldOptions o;
      o.kmax = frac * n;
      const Field a = random_band_limited(g, o, rng);
      const Field b = random_band_limited(g, o, rng);
      defect[i] = bony_defect(a, b);
    });
    for (int i = 0; i < samples; ++i) {
      csv.row({static_cast<double>(n), static_cast<double>(i), defect[i]});
      worst = std::max(worst, defect[i]);
    }
  }
  r.summary["max_defect"] = num(worst);
}

void cmd_probe(Run& r) {
  const int samples = static_cast<int>(r.cfg.integer("ensemble.samples", 64));
  const auto ns = r.cfg.integers("ensemble.n", {64, 128});
  const int d = static_cast<int>(r.cfg.integer("grid.d", 2));
  const int kmax = static_cast<int>(r.cfg.integer("ensemble.kmax", 12));
  const std::string which = r.cfg.text("probe.ids", "all");
  std::vector<InequalityId> ids;
  if (which == "all") {
    ids = all_inequalities();
  } else {
    std::size_t start = 0;
    while (start <= which.size()) {
      std::size_t end = which.find(',', start);
      if (end == std::string::npos) end = which.size();
      std::string name = which.substr(start, end - start);
      name.erase(0, name.find_first_not_of(' '));
      name.erase(name.find_last_not_of(' ') + 1);
      ids.push_back(inequality_from_string(name));
      start = end + 1;
    }
  }
  Csv csv(r.file("probe.csv"), {"id", "n", "sample", "lhs", "rhs", "ratio"});
  json per = json::object();
  for (InequalityId id : ids) {
    const ProbeParameters pp = default_probe_parameters(id);
    std::vector<double> worst;
    for (int n : ns) {
      const Grid g = Grid::make(d, n);
      std::vector<InequalityReport> reps(samples);
      parallel_for(samples, [&](std::size_t i) { reps[i] = probe_member(id, g, r.seed, i, pp, kmax); });
      double m = 0.0;
      for (int i = 0; i < samples; ++i) {
        double rhs = 0.0;
        for (const auto& [k, v] : reps[i].rhs_terms) rhs += v;
        csv.row({std::string(to_string(id)), std::to_string(n), std::to_string(i), fmt(reps[i].lhs), fmt(rhs),
                 fmt(reps[i].ratio)});
        m = std::isfinite(reps[i].ratio) ? std::max(m, reps[i].ratio) : inf;
        if (!std::isfinite(m)) break;
      }
      worst.push_back(m);
    }
    json entry = json::object();
    json maxes = json::array();
    for (double w : worst) maxes.push_back(num(w));
    entry["max_ratio"] = maxes;
    if (worst.size() >= 2) entry["growth"] = num(worst.back() / worst.front());
    per[std::string(to_string(id))] = entry;
  }
  r.summary["inequalities"] = per;
}

void write_series(Run& r, const EvolveResult& res, const PhysicalParams& params) {
  const Trajectory& tr = res.traj;
  std::vector<std::string> header = {"t"};
  std::vector<std::string> keys;
  for (const auto& [k, v] : tr.series()) {
    if (v.size() == tr.size()) {
      header.push_back(k);
      keys.push_back(k);
    }
  }
  for (const char* k : {"res_density", "res_momentum", "res_form_difference", "res_divergence"}) header.push_back(k);
  Csv csv(r.file("timeseries.csv"), header);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    std::vector<std::string> row = {fmt(tr.times()[i])};
    for (const auto& k : keys) row.push_back(fmt(tr.series().at(k)[i]));
    // centred differences need both neighbours
    if (i > 0 && i + 1 < tr.size()) {
      const SystemResidual s = system_residual(tr, i, params);
      for (double x : {s.density, s.momentum, s.form_difference, s.divergence}) row.push_back(fmt(x));
    } else {
      for (int k = 0; k < 4; ++k) row.push_back("");
    }
    csv.row(row);
  }
  const std::size_t last = tr.size() - 1;
  write_field(r.file("rho_final.bzmf").string(), tr.at(last, "rho"));
  write_field(r.file("u_final.bzmf").string(), tr.at(last, "u"));
  r.summary["stop"] = to_string(res.stop);
  r.summary["stop_time"] = num(res.stop_time);
  r.summary["steps"] = res.steps;
  r.summary["dt"] = num(res.dt);
  if (res.stop == StopReason::continuation_triggered) r.exit_code = 2;
}

struct Initial {
  Grid grid;
  PhysicalParams params;
  Field rho0, u0;
};

Initial initial_from(Run& r) {
  const Grid g = grid_from(r.cfg);
  PhysicalParams p = physical_from(r.cfg);
  Field rho = scalar_profile(r.cfg, "rho", g, r.seed);
  Field u = velocity_profile(r.cfg, "u", g, r.seed);
  return {g, std::move(p), std::move(rho), std::move(u)};
}

void cmd_solve(Run& r) {
  Initial in = initial_from(r);
  const EvolveOptions o = evolve_from(r.cfg);
  const EvolveResult res = evolve(in.rho0, in.u0, in.params, o);
  write_series(r, res, in.params);
}

void cmd_continuation(Run& r) {
  Initial in = initial_from(r);
  EvolveOptions o = evolve_from(r.cfg);
  const EvolveResult res = evolve(in.rho0, in.u0, in.params, o);
  write_series(r, res, in.params);
  Csv csv(r.file("monitor.csv"), {"t", "sup_term", "integral", "continuation", "K", "W", "lambda_star"});
  for (const auto& s : res.monitor) csv.row({s.t, s.sup_term, s.integral, s.continuation, s.K, s.W, s.lambda_star});
  r.summary["triggered"] = res.stop == StopReason::continuation_triggered;
}

void cmd_picard(Run& r) {
  Initial in = initial_from(r);
  const PicardOptions o = picard_from(r.cfg);
  const PicardResult res = picard_driver(in.rho0, in.u0, in.params, o);
  Csv csv(r.file("picard.csv"), {"n", "B", "ratio", "delta_rho", "delta_rho_l1", "delta_u", "delta_grad_pi",
                                 "delta_grad_pi_l2", "R", "S", "U", "rho_bar"});
  json wall = json::array();
  for (std::size_t i = 0; i < res.records.size(); ++i) {
    const auto& k = res.records[i];
    const double ratio = i > 0 ? k.B / res.records[i - 1].B : std::nan("");
    csv.row({static_cast<double>(k.n), k.B, ratio, k.delta_rho, k.delta_rho_l1, k.delta_u, k.delta_grad_pi,
             k.delta_grad_pi_l2, k.R, k.S, k.U, k.rho_bar});
    wall.push_back(k.wall_seconds);
  }
  r.summary["iteration_wall_seconds"] = wall;
  r.summary["converged"] = res.converged;
  r.summary["stagnated"] = res.stagnated;
  r.summary["iterations"] = res.records.size();
  if (r.cfg.flag("picard.compare_evolve", false) && !res.iterates.empty()) {
    EvolveOptions eo = evolve_from(r.cfg);
    eo.T = o.T_star;
    eo.dt = res.dt;
    eo.stride = 1;
    const EvolveResult ev = evolve(in.rho0, in.u0, in.params, eo);
    const Trajectory& last = res.iterates.back();
    const BesovParams bp{in.grid.dim() / o.p, o.p, 1.0};
    double diff = 0.0;
    for (std::size_t i = 0; i < std::min(last.size(), ev.traj.size()); ++i) {
      diff = std::max(diff, besov_norm(last.at(i, "rho") - ev.traj.at(i, "rho"), bp) +
                                besov_norm(last.at(i, "u") - ev.traj.at(i, "u"), bp));
    }
    r.summary["evolve_difference"] = num(diff);
  }
}

void cmd_lifespan(Run& r) {
  Initial in = initial_from(r);
  const LifespanStudyOptions o = lifespan_from(r.cfg);
  const LifespanReport rep = lifespan_study(in.rho0, in.u0, in.params, o);
  Csv csv(r.file("lifespan.csv"), {"t", "R", "S", "U", "E"});
  for (std::size_t i = 0; i < rep.t.size(); ++i) csv.row({rep.t[i], rep.R[i], rep.S[i], rep.U[i], rep.E[i]});
  Csv pc(r.file("parabolic.csv"), {"j", "constant"});
  for (std::size_t j = 0; j < rep.parabolic_constant.size(); ++j) {
    pc.row({static_cast<double>(j), rep.parabolic_constant[j]});
  }
  r.summary["U0"] = num(rep.U0);
  r.summary["R0"] = num(rep.R0);
  r.summary["bound"] = num(rep.bound);
  r.summary["T_R"] = num(rep.T_R);
  r.summary["T_U"] = num(rep.T_U);
  r.summary["stable_horizon"] = num(rep.stable_horizon);
  r.summary["regular_until_bound"] = rep.regular_until_bound;
  r.summary["stop"] = to_string(rep.stop);
  if (rep.stop == StopReason::continuation_triggered) r.exit_code = 2;
}

const std::map<std::string, std::function<void(Run&)>>& table() {
  static const std::map<std::string, std::function<void(Run&)>> t = {
      {"decompose", cmd_decompose}, {"norm", cmd_norm},     {"bony-check", cmd_bony},
      {"inequality-probe", cmd_probe}, {"solve", cmd_solve}, {"picard", cmd_picard},
      {"lifespan", cmd_lifespan},   {"continuation", cmd_continuation}};
  return t;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : table()) n.push_back(k);
    return n;
  }();
  return names;
}

int run_command(const std::string& command, Config cfg, std::optional<std::uint64_t> seed, const std::string& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t s = seed ? *seed : static_cast<std::uint64_t>(cfg.integer("seed", 0));
  Run run{cfg, s, fs::path(out_dir), json::object(), {}, 0};
  json manifest = json::object();
  manifest["command"] = command;
  manifest["version"] = version;
  manifest["seed"] = s;
  manifest["threads"] = thread_budget();
  std::string status = "ok";
  try {
    const auto it = table().find(command);
    if (it == table().end()) throw Error(ErrorKind::invalid_argument, "unknown command '" + command + "'");
    fs::create_directories(run.out);
    it->second(run);
    if (run.exit_code == 2) status = "continuation-triggered";
  } catch (const std::exception& e) {
    std::cerr << "bzm " << command << ": " << e.what() << '\n';
    status = "error";
    manifest["error"] = e.what();
    run.exit_code = 1;
  }
  json effective = json::object();
  for (const auto& [k, v] : cfg.effective()) effective[k] = v;
  manifest["config"] = effective;
  manifest["unused_keys"] = cfg.unused();
  manifest["status"] = status;
  manifest["exit_code"] = run.exit_code;
  manifest["summary"] = run.summary;
  manifest["outputs"] = run.outputs;
  manifest["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::error_code ec;
  fs::create_directories(run.out, ec);
  std::ofstream m(run.out / "manifest.json");
  if (m) m << manifest.dump(2) << '\n';
  return run.exit_code;
}

}  // namespace bzm
