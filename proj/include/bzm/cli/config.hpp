#pragma once

#include <map>
#include <string>
#include <vector>

namespace bzm {

/// Flat `key = value` configuration. Keys are dotted (`grid.n`); a line
/// `[solver]` prefixes the keys that follow with `solver.`. `#` starts a
/// comment. Every lookup is recorded with the value actually used, defaults
/// included, so a run can echo its complete effective configuration.
class Config {
 public:
  Config() = default;

  /// Throws Error(config_parse_error) with the offending line number.
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

  double number(const std::string& key, double fallback) const;
  long long integer(const std::string& key, long long fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  /// Comma-separated integers, e.g. `4, 0`.
  std::vector<int> integers(const std::string& key, const std::vector<int>& fallback) const;

  /// Keys looked up so far with the values used.
  const std::map<std::string, std::string>& effective() const { return used_; }
  /// Keys present in the file that were never looked up.
  std::vector<std::string> unused() const;

 private:
  const std::string* raw(const std::string& key, const std::string& fallback) const;

  std::map<std::string, std::string> values_;
  mutable std::map<std::string, std::string> used_;
};

}  // namespace bzm
