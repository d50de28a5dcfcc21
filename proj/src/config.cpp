#include "gsp/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

namespace gsp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_field(const std::string& key, const std::string& value, const char* expected) {
  throw ConfigError("field '" + key + "': expected " + expected + ", got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool parse_double(const std::string& s, double& out) {
  try {
    size_t used = 0;
    out = std::stod(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

bool parse_int(const std::string& s, std::int64_t& out) {
  try {
    size_t used = 0;
    out = std::stoll(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

Config Config::parse(std::istream& in) {
  Config cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    cfg.set(trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
  }
  return cfg;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse(in);
}

void Config::set(const std::string& key, const std::string& value) {
  if (key.empty()) throw ConfigError("config: empty key");
  values_[key] = value;
}

void Config::set_assignment(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not key=value");
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

const std::string& Config::resolve(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  const std::string& v = it == values_.end() ? fallback : it->second;
  return resolved_[key] = v;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  return resolve(key, fallback);
}

double Config::get_double(const std::string& key, double fallback) const {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, fallback);
  const std::string v = resolve(key, std::string(buf, res.ptr));
  double out = 0.0;
  if (!parse_double(v, out)) bad_field(key, v, "a number");
  return out;
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) const {
  const std::string v = resolve(key, std::to_string(fallback));
  std::int64_t out = 0;
  if (!parse_int(v, out)) bad_field(key, v, "an integer");
  return out;
}

std::uint64_t Config::get_seed(const std::string& key, std::uint64_t fallback) const {
  const std::string v = resolve(key, std::to_string(fallback));
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isdigit(c); })) {
    bad_field(key, v, "a nonnegative integer");
  }
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    bad_field(key, v, "a 64-bit seed");
  }
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const std::string v = resolve(key, fallback ? "true" : "false");
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad_field(key, v, "true or false");
}

std::vector<double> Config::get_doubles(const std::string& key, const std::string& fallback) const {
  const std::string v = resolve(key, fallback);
  std::vector<double> out;
  for (const auto& item : split_list(v)) {
    double d = 0.0;
    if (!parse_double(item, d)) bad_field(key, v, "a comma-separated list of numbers");
    out.push_back(d);
  }
  return out;
}

std::vector<std::int64_t> Config::get_ints(const std::string& key, const std::string& fallback) const {
  const std::string v = resolve(key, fallback);
  std::vector<std::int64_t> out;
  for (const auto& item : split_list(v)) {
    std::vector<std::int64_t> parts;
    std::stringstream ss(item);
    std::string piece;
    while (std::getline(ss, piece, ':')) {
      std::int64_t x = 0;
      if (!parse_int(trim(piece), x)) bad_field(key, v, "integers or ranges a:b[:step]");
      parts.push_back(x);
    }
    if (parts.size() == 1) {
      out.push_back(parts[0]);
    } else if (parts.size() == 2 || parts.size() == 3) {
      const std::int64_t step = parts.size() == 3 ? parts[2] : 1;
      if (step <= 0 || parts[1] < parts[0]) bad_field(key, v, "an increasing range a:b[:step]");
      for (std::int64_t x = parts[0]; x <= parts[1]; x += step) out.push_back(x);
    } else {
      bad_field(key, v, "integers or ranges a:b[:step]");
    }
  }
  return out;
}

void Config::reject_unused() const {
  for (const auto& [key, value] : values_) {
    if (!resolved_.count(key)) throw ConfigError("field '" + key + "' is not used by this command");
  }
}

std::string Config::provenance() const {
  std::string out;
  for (const auto& [key, value] : resolved_) {
    if (!out.empty()) out += ' ';
    out += key + "=" + value;
  }
  return out;
}

}  // namespace gsp
