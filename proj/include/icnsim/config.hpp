#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace icnsim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using ConfigMap = std::map<std::string, std::string>;

// Parses `key = value` lines; '#' starts a comment, blank lines are ignored.
// Duplicate keys are rejected.
ConfigMap parse_config_text(const std::string& text);

ConfigMap load_config(const std::string& path);

}  // namespace icnsim
