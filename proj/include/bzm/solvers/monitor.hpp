#pragma once

#include <vector>

#include "bzm/besov/besov_params.hpp"
#include "bzm/besov/trajectory.hpp"
#include "bzm/model/params.hpp"

namespace bzm {

struct MonitorConfig {
  double sigma = 0.5;          // pressure measured in B^{-sigma}_{p,inf}
  BesovParams besov{0.0, 2.0, 1.0};  // (s, p, r) of K(t) and W(t); s <= 0 means 1 + d/p
  double continuation_threshold = inf;  // stop once the continuation quantity exceeds it
  double k_threshold = inf;
  LifespanParams lifespan;
  int stride = 4;

  void validate() const;
};

/// One monitor sample.
struct MonitorSample {
  double t = 0.0;
  double sup_term = 0.0;      // sup_{[0,t]} ||grad rho||_inf + ||u||_inf
  double integral = 0.0;      // int (||grad^2 rho||_inf + ||grad u||_inf)^2 + ||grad pi||_{B^-sigma cap L^inf}
  double continuation = 0.0;  // sup_term + integral
  double K = 0.0;             // int K'(t)
  double W = 0.0;             // int ||grad w||
  double lambda_star = 0.0;
};

/// Running evaluation of the continuation quantities, fed one state at a time
/// in increasing t. Integrals use the trapezoid rule between fed samples.
class ContinuationMonitor {
 public:
  ContinuationMonitor(MonitorConfig cfg, PhysicalParams params);

  const MonitorSample& observe(double t, const Field& rho, const Field& u, const Field& grad_pi);
  const std::vector<MonitorSample>& samples() const { return samples_; }
  bool triggered() const { return triggered_; }
  double trigger_time() const { return trigger_time_; }

 private:
  struct Integrands {
    double cont = 0.0, kprime = 0.0, w = 0.0;
  };

  MonitorConfig cfg_;
  PhysicalParams params_;
  std::vector<MonitorSample> samples_;
  Integrands last_;
  double sup_lambda_ = 0.0;
  // Running per-component, per-block sup over time of grad lambda.
  std::vector<std::vector<double>> block_sup_hi_, block_sup_lo_;
  bool triggered_ = false;
  double trigger_time_ = -1.0;
};

/// Monitor series of a stored trajectory with channels rho, u, grad_pi.
std::vector<MonitorSample> continuation_monitor(const Trajectory& traj, const MonitorConfig& cfg,
                                                const PhysicalParams& params);

}  // namespace bzm
