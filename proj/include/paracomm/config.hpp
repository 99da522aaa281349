#pragma once

// Flat "key = value" configuration with [section] headers. Keys are addressed
// as "section.key"; values typed on access. '#' and ';' start comments.

#include <map>
#include <string>
#include <vector>

namespace paracomm {

class Config {
 public:
  Config() = default;
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  bool has(const std::string& key) const { return kv_.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  double get(const std::string& key, double fallback) const;
  long get(const std::string& key, long fallback) const;
  int get(const std::string& key, int fallback) const;
  /// comma/space separated list of reals
  std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<std::string> get_names(const std::string& key,
                                     const std::vector<std::string>& fallback) const;

  void set(const std::string& key, const std::string& value) { kv_[key] = value; }

  /// canonical text (sorted keys) and its FNV-1a hash, for run manifests
  std::string canonical() const;
  unsigned long long hash() const;

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace paracomm
