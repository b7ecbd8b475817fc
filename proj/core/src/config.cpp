#include "roughflow/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "roughflow/errors.hpp"

namespace roughflow {

namespace {
std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}
}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: missing '=' on line " + std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config: empty key on line " + std::to_string(lineno));
    cfg.kv_[key] = val;
  }
  return cfg;
}

std::string Config::get_string(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) throw ConfigError("config: missing key '" + key + "'", {key});
  return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& dflt) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? dflt : it->second;
}

double Config::get_real(const std::string& key) const {
  std::string s = get_string(key);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw ConfigError("config: key '" + key + "' is not a real: " + s, {key});
  return v;
}

double Config::get_real(const std::string& key, double dflt) const {
  return has(key) ? get_real(key) : dflt;
}

std::int64_t Config::get_int(const std::string& key) const {
  std::string s = get_string(key);
  char* end = nullptr;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (end == s.c_str() || *end != '\0')
    throw ConfigError("config: key '" + key + "' is not an integer: " + s, {key});
  return v;
}

std::int64_t Config::get_int(const std::string& key, std::int64_t dflt) const {
  return has(key) ? get_int(key) : dflt;
}

std::vector<double> Config::get_real_list(const std::string& key) const {
  std::string s = get_string(key);
  std::vector<double> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
      throw ConfigError("config: key '" + key + "' has a non-real entry: " + tok, {key});
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("config: key '" + key + "' is an empty list", {key});
  return out;
}

std::vector<std::int64_t> Config::get_int_list(const std::string& key) const {
  std::vector<std::int64_t> out;
  for (double v : get_real_list(key)) out.push_back(std::int64_t(v));
  return out;
}

}  // namespace roughflow
