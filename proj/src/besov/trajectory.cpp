#include "bzm/besov/trajectory.hpp"

#include "bzm/error.hpp"

namespace bzm {

void Trajectory::append(double t, Channels channels) {
  if (times_.empty() ? t != 0.0 : !(t > times_.back())) {
    throw Error(ErrorKind::invalid_argument, "trajectory times must start at 0 and increase");
  }
  for (const auto& [name, f] : channels) {
    if (!grid_.valid()) grid_ = f.grid();
    if (!(f.grid() == grid_)) throw Error(ErrorKind::grid_mismatch, "channel " + name + " on another grid");
  }
  times_.push_back(t);
  states_.push_back(std::move(channels));
}

bool Trajectory::has_channel(const std::string& name) const {
  if (states_.empty()) return false;
  for (const auto& s : states_) {
    if (!s.contains(name)) return false;
  }
  return true;
}

const Field& Trajectory::at(std::size_t i, const std::string& name) const {
  const auto& s = states_.at(i);
  auto it = s.find(name);
  if (it == s.end()) {
    throw Error(ErrorKind::missing_channel, "channel '" + name + "' absent at sample " + std::to_string(i));
  }
  return it->second;
}

Field& Trajectory::at_mut(std::size_t i, const std::string& name) {
  return const_cast<Field&>(static_cast<const Trajectory*>(this)->at(i, name));
}

void Trajectory::set(std::size_t i, const std::string& name, Field f) {
  states_.at(i)[name] = std::move(f);
}

Trajectory Trajectory::prefix(std::size_t last) const {
  Trajectory out(grid_);
  for (std::size_t i = 0; i <= last && i < times_.size(); ++i) {
    out.times_.push_back(times_[i]);
    out.states_.push_back(states_[i]);
  }
  for (const auto& [k, v] : series_) {
    out.series_[k] = std::vector<double>(v.begin(), v.begin() + std::min(v.size(), out.size()));
  }
  return out;
}

Trajectory Trajectory::subsample(std::size_t stride) const {
  Trajectory out(grid_);
  if (stride == 0) stride = 1;
  for (std::size_t i = 0; i < times_.size(); i += stride) {
    out.times_.push_back(times_[i]);
    out.states_.push_back(states_[i]);
    for (const auto& [k, v] : series_) {
      if (i < v.size()) out.series_[k].push_back(v[i]);
    }
  }
  return out;
}

}  // namespace bzm
