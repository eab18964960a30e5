#include "bzm/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "bzm/error.hpp"

namespace bzm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* want) {
  throw Error(ErrorKind::config_parse_error, "key '" + key + "': '" + value + "' is not " + want);
}

// Shortest text that reads back to the same double.
std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto where = " (line " + std::to_string(lineno) + ")";
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) throw Error(ErrorKind::config_parse_error, "bad section header" + where);
      section = trim(line.substr(1, line.size() - 2)) + ".";
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::config_parse_error, "expected key = value" + where);
    const std::string key = section + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || key == section) throw Error(ErrorKind::config_parse_error, "empty key" + where);
    if (cfg.values_.count(key)) throw Error(ErrorKind::config_parse_error, "duplicate key '" + key + "'" + where);
    cfg.values_[key] = value;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io_error, "cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const std::string* Config::raw(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  used_[key] = it == values_.end() ? fallback : it->second;
  return it == values_.end() ? nullptr : &it->second;
}

double Config::number(const std::string& key, double fallback) const {
  const std::string* v = raw(key, format_number(fallback));
  if (!v) return fallback;
  if (*v == "inf") return std::numeric_limits<double>::infinity();
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size()) bad_value(key, *v, "a number");
  return out;
}

long long Config::integer(const std::string& key, long long fallback) const {
  const std::string* v = raw(key, std::to_string(fallback));
  if (!v) return fallback;
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size()) bad_value(key, *v, "an integer");
  return out;
}

std::string Config::text(const std::string& key, const std::string& fallback) const {
  const std::string* v = raw(key, fallback);
  return v ? *v : fallback;
}

bool Config::flag(const std::string& key, bool fallback) const {
  const std::string* v = raw(key, fallback ? "true" : "false");
  if (!v) return fallback;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  bad_value(key, *v, "a boolean");
}

std::vector<int> Config::integers(const std::string& key, const std::vector<int>& fallback) const {
  std::string def;
  for (std::size_t i = 0; i < fallback.size(); ++i) def += (i ? "," : "") + std::to_string(fallback[i]);
  const std::string* v = raw(key, def);
  if (!v) return fallback;
  std::vector<int> out;
  std::istringstream in(*v);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    int x = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), x);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) bad_value(key, *v, "a list of integers");
    out.push_back(x);
  }
  return out;
}

std::vector<std::string> Config::unused() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values_) {
    if (!used_.count(k)) out.push_back(k);
  }
  return out;
}

}  // namespace bzm
