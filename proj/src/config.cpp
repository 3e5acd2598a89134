#include "dimer/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dimer {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void bad_config(const std::string& what) {
  throw std::invalid_argument("config error: " + what);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ConfigFile ConfigFile::parse(const std::string& text) {
  ConfigFile cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') bad_config("unterminated section at line " + std::to_string(lineno));
      section = trim(t.substr(1, t.size() - 2));
      cfg.sections_[section];
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      bad_config("expected key = value at line " + std::to_string(lineno));
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) bad_config("empty key at line " + std::to_string(lineno));
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) bad_config("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::string ConfigFile::serialise() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, kv] : sections_) {
    if (!first) out << "\n";
    first = false;
    out << "[" << name << "]\n";
    for (const auto& [k, v] : kv) out << k << " = " << v << "\n";
  }
  return out.str();
}

void ConfigFile::save(const std::string& path) const {
  std::ofstream f(path);
  if (!f) bad_config("cannot write " + path);
  f << serialise();
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   std::optional<std::string> fallback) const {
  const auto s = sections_.find(section);
  if (s != sections_.end()) {
    const auto k = s->second.find(key);
    if (k != s->second.end()) return k->second;
  }
  if (fallback) return *fallback;
  bad_config("missing [" + section + "] " + key);
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              std::optional<double> fallback) const {
  if (!has(section, key)) {
    if (fallback) return *fallback;
    bad_config("missing [" + section + "] " + key);
  }
  const std::string v = get_string(section, key);
  size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    bad_config("[" + section + "] " + key + ": not a number: " + v);
  }
  if (pos != v.size()) bad_config("[" + section + "] " + key + ": trailing junk: " + v);
  return out;
}

long ConfigFile::get_int(const std::string& section, const std::string& key,
                         std::optional<long> fallback) const {
  if (!has(section, key)) {
    if (fallback) return *fallback;
    bad_config("missing [" + section + "] " + key);
  }
  const std::string v = get_string(section, key);
  size_t pos = 0;
  long out = 0;
  try {
    out = std::stol(v, &pos);
  } catch (const std::exception&) {
    bad_config("[" + section + "] " + key + ": not an integer: " + v);
  }
  if (pos != v.size()) bad_config("[" + section + "] " + key + ": trailing junk: " + v);
  return out;
}

void ConfigFile::set(const std::string& section, const std::string& key,
                     const std::string& value) {
  sections_[section][key] = value;
}

void ConfigFile::set(const std::string& section, const std::string& key, double value) {
  sections_[section][key] = format_double(value);
}

}  // namespace dimer
