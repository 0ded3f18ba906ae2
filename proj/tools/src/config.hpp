#ifndef SGMLAB_CONFIG_HPP
#define SGMLAB_CONFIG_HPP

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgmlab {

/// Usage-level problem (bad key, malformed value): exit code 1 territory.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// key = value experiment description. '#' starts a comment, blank lines
/// ignored, later assignments win.
class Config {
 public:
  void load_file(const std::string& path);
  void parse_line(const std::string& line, const std::string& where);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& dflt) const;
  double get_double(const std::string& key, double dflt) const;
  std::size_t get_size(const std::string& key, std::size_t dflt) const;
  bool get_bool(const std::string& key, bool dflt) const;
  /// "inf" allowed.
  double get_exponent(const std::string& key, double dflt) const;

  /// Throws ConfigError naming the first key outside the allowed set.
  void require_known(const std::set<std::string>& allowed) const;

  /// FNV-1a over the sorted "key=value\n" rendering.
  std::string hash() const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace sgmlab

#endif
