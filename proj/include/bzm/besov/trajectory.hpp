#pragma once

#include <map>
#include <string>
#include <vector>

#include "bzm/spectral/field.hpp"

namespace bzm {

/// Time samples of named fields ("rho", "u", "grad_pi", ...) plus scalar
/// series recorded alongside (monitor quantities, residuals).
class Trajectory {
 public:
  using Channels = std::map<std::string, Field>;

  Trajectory() = default;
  explicit Trajectory(Grid grid) : grid_(std::move(grid)) {}

  /// Appends a sample; times must start at 0 and increase strictly.
  void append(double t, Channels channels);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }
  const std::vector<double>& times() const { return times_; }
  double horizon() const { return times_.empty() ? 0.0 : times_.back(); }

  bool has_channel(const std::string& name) const;
  /// Throws Error(missing_channel) when absent at sample i.
  const Field& at(std::size_t i, const std::string& name) const;
  Field& at_mut(std::size_t i, const std::string& name);
  const Channels& sample(std::size_t i) const { return states_.at(i); }
  void set(std::size_t i, const std::string& name, Field f);

  std::map<std::string, std::vector<double>>& series() { return series_; }
  const std::map<std::string, std::vector<double>>& series() const { return series_; }

  /// Keeps samples with index <= last.
  Trajectory prefix(std::size_t last) const;
  /// Keeps every stride-th sample (and always the first).
  Trajectory subsample(std::size_t stride) const;

 private:
  Grid grid_;
  std::vector<double> times_;
  std::vector<Channels> states_;
  std::map<std::string, std::vector<double>> series_;
};

}  // namespace bzm
