#pragma once

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>

#include "silico/coefficients.hpp"

namespace silico::cli {

/// Bad flags, missing required values, malformed config files: exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json load_config_file(const std::string& path);

/// Recursive merge: objects are merged key by key, anything else replaced.
void overlay(nlohmann::json& base, const nlohmann::json& top);

/// Builds a family from {"kind": ..., ...} and rewrites `spec` into its
/// fully resolved form (defaults filled in, derived a and b for power laws).
CoefficientFamily family_from_json(nlohmann::json& spec);

double get_real(const nlohmann::json& cfg, const std::string& key);
long long get_integer(const nlohmann::json& cfg, const std::string& key);
std::string get_text(const nlohmann::json& cfg, const std::string& key);
bool has(const nlohmann::json& cfg, const std::string& key);

}  // namespace silico::cli
