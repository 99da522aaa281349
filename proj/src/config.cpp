#include "paracomm/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace paracomm {

namespace {
std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}
}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("Config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

Config Config::from_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::runtime_error("Config: bad section header at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("Config: missing '=' at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw std::runtime_error("Config: empty key at line " + std::to_string(lineno));
    cfg.kv_[section.empty() ? key : section + "." + key] = val;
  }
  return cfg;
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double Config::get(const std::string& key, double fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  return std::stod(it->second);
}

long Config::get(const std::string& key, long fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  return std::stol(it->second);
}

int Config::get(const std::string& key, int fallback) const {
  return int(get(key, long(fallback)));
}

std::vector<double> Config::get_list(const std::string& key,
                                     const std::vector<double>& fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  std::vector<double> out;
  std::string tok;
  std::istringstream ss(it->second);
  while (std::getline(ss, tok, ',')) {
    std::istringstream inner(tok);
    double x;
    while (inner >> x) out.push_back(x);
  }
  return out;
}

std::vector<std::string> Config::get_names(const std::string& key,
                                           const std::vector<std::string>& fallback) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  std::vector<std::string> out;
  std::string tok;
  std::istringstream ss(it->second);
  while (std::getline(ss, tok, ',')) {
    std::istringstream inner(tok);
    std::string w;
    while (inner >> w) out.push_back(w);
  }
  return out;
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [k, v] : kv_) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  }
  return out;
}

unsigned long long Config::hash() const {
  unsigned long long h = 1469598103934665603ull;
  for (char c : canonical()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace paracomm
