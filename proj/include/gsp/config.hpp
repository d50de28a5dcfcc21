#pragma once

#include "gsp/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace gsp {

/// Flat `key = value` settings. Later assignments override earlier ones, so
/// command-line overrides are applied with set() after the file is read.
///
/// Every getter records the value it resolved (including defaults); the
/// record is what ends up in the CSV provenance line. Keys that were set but
/// never read are rejected by reject_unused().
class Config {
 public:
  static Config parse(std::istream& in);
  static Config from_file(const std::string& path);

  void set(const std::string& key, const std::string& value);
  /// Parses `key=value`.
  void set_assignment(const std::string& assignment);
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::uint64_t get_seed(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma-separated numbers.
  std::vector<double> get_doubles(const std::string& key, const std::string& fallback) const;
  /// Comma-separated integers; `a:b` expands to a..b inclusive, `a:b:s` steps by s.
  std::vector<std::int64_t> get_ints(const std::string& key, const std::string& fallback) const;

  /// Throws ConfigError naming the first key that no getter consumed.
  void reject_unused() const;
  /// `key=value` pairs for every resolved key, sorted by key.
  std::string provenance() const;

 private:
  const std::string& resolve(const std::string& key, const std::string& fallback) const;

  std::map<std::string, std::string> values_;
  mutable std::map<std::string, std::string> resolved_;
};

}  // namespace gsp
