#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace roughflow {

// Flat key-value config file:
//   key = value            # comment
// Values are strings, reals, integers, or comma-separated lists thereof.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& key) const { return kv_.count(key) > 0; }

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& dflt) const;
  double get_real(const std::string& key) const;
  double get_real(const std::string& key, double dflt) const;
  std::int64_t get_int(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t dflt) const;
  std::vector<double> get_real_list(const std::string& key) const;
  std::vector<std::int64_t> get_int_list(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace roughflow
