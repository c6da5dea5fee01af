#pragma once

#include "eduassist/chat/provider.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eduassist::service {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flat "section.key" -> raw value view of a config file. Accepts
// [section] headers, `key = value` lines, dotted keys, # comments and
// double-quoted strings with \" \\ \n \t escapes.
std::map<std::string, std::string> parse_config_text(std::string_view text);

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

std::optional<std::string> process_env(const std::string& name);

// "provider.endpoint_url" -> "EDUASSIST_PROVIDER_ENDPOINT_URL"
std::string env_name_for(std::string_view key);

struct ServiceConfig {
    chat::ProviderConfig provider;
    chat::ProviderConfig image; // kind is always RemoteImage; empty endpoint disables image Q&A
    std::filesystem::path dataset_path;
    std::filesystem::path lexicon_dir;
    std::string bind_host = "127.0.0.1";
    int bind_port = 8080;
    std::string cors_origin = "*";
    std::filesystem::path data_dir = "eduassist-data";
    std::size_t word_budget = chat::kDefaultWordBudget;

    // Cross-field checks (provider credentials, mock dataset presence).
    void validate() const;
};

// Applies file values, then EDUASSIST_* overrides. Relative paths are
// resolved against base_dir. Unknown keys and api keys in the file are
// rejected.
ServiceConfig build_config(const std::map<std::string, std::string>& file_values,
                           const std::filesystem::path& base_dir, const EnvLookup& env = process_env);

ServiceConfig load_config(const std::filesystem::path& path, const EnvLookup& env = process_env);

} // namespace eduassist::service
