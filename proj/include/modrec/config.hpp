#pragma once

#include <map>
#include <string>
#include <vector>

namespace modrec {

// Flat key=value text ('#' comments) or a single-level JSON object.
// Values come back as strings; callers convert and validate.
// Throws IoError when the file is missing, FormatError when unparseable.
std::map<std::string, std::string> load_config_file(const std::string& path);

// Rejects keys outside `known`; throws ValidationError naming the offender.
void reject_unknown_keys(const std::map<std::string, std::string>& config,
                         const std::vector<std::string>& known);

long config_int(const std::map<std::string, std::string>& config, const std::string& key,
                long fallback);
double config_double(const std::map<std::string, std::string>& config, const std::string& key,
                     double fallback);
std::string config_string(const std::map<std::string, std::string>& config,
                          const std::string& key, const std::string& fallback);

}  // namespace modrec
