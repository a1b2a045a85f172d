#include "modrec/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "modrec/common.hpp"

namespace modrec {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::map<std::string, std::string> parse_json_config(const std::string& text,
                                                     const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("bad json config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw FormatError("config json must be a flat object: " + path);
  std::map<std::string, std::string> out;
  for (const auto& [key, value] : j.items()) {
    if (value.is_string()) {
      out[key] = value.get<std::string>();
    } else if (value.is_boolean()) {
      out[key] = value.get<bool>() ? "true" : "false";
    } else if (value.is_number()) {
      out[key] = value.dump();
    } else {
      throw FormatError("config key '" + key + "' must be scalar: " + path);
    }
  }
  return out;
}

}  // namespace

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  const std::string text = buf.str();

  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') return parse_json_config(text, path);

  std::map<std::string, std::string> out;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw FormatError("config line " + std::to_string(lineno) + " is not key=value: " + path);
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw FormatError("config line " + std::to_string(lineno) + " has empty key: " + path);
    }
    out[key] = value;
  }
  return out;
}

void reject_unknown_keys(const std::map<std::string, std::string>& config,
                         const std::vector<std::string>& known) {
  for (const auto& [key, value] : config) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ValidationError("unknown config key: " + key);
    }
  }
}

long config_int(const std::map<std::string, std::string>& config, const std::string& key,
                long fallback) {
  const auto it = config.find(key);
  if (it == config.end()) return fallback;
  try {
    size_t pos = 0;
    const long v = std::stol(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("config key '" + key + "' is not an integer: " + it->second);
  }
}

double config_double(const std::map<std::string, std::string>& config, const std::string& key,
                     double fallback) {
  const auto it = config.find(key);
  if (it == config.end()) return fallback;
  try {
    size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("config key '" + key + "' is not a number: " + it->second);
  }
}

std::string config_string(const std::map<std::string, std::string>& config,
                          const std::string& key, const std::string& fallback) {
  const auto it = config.find(key);
  return it == config.end() ? fallback : it->second;
}

}  // namespace modrec
