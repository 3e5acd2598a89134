#pragma once

#include <map>
#include <optional>
#include <string>

namespace dimer {

// Flat sectioned key-value config: '[section]' headers, 'key = value'
// entries, '#' or ';' comments. Keys are stored sorted so that
// load -> save -> load round-trips byte-identically.
class ConfigFile {
 public:
  static ConfigFile load(const std::string& path);
  static ConfigFile parse(const std::string& text);
  void save(const std::string& path) const;
  std::string serialise() const;

  bool has(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         std::optional<std::string> fallback = std::nullopt) const;
  double get_double(const std::string& section, const std::string& key,
                    std::optional<double> fallback = std::nullopt) const;
  long get_int(const std::string& section, const std::string& key,
               std::optional<long> fallback = std::nullopt) const;
  void set(const std::string& section, const std::string& key, const std::string& value);
  void set(const std::string& section, const std::string& key, double value);

  const std::map<std::string, std::map<std::string, std::string>>& sections() const {
    return sections_;
  }

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

// full-precision decimal formatting used for all file output
std::string format_double(double v);

}  // namespace dimer
