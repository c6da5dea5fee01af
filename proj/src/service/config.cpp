#include "eduassist/service/config.hpp"

#include "eduassist/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace eduassist::service {

namespace {

constexpr std::array kKnownKeys = {
    "provider.kind",       "provider.endpoint_url",   "provider.model_name", "provider.timeout_secs",
    "image.endpoint_url",  "image.model_name",        "image.timeout_secs",  "mock.dataset_path",
    "mock.similarity_threshold", "analyzer.lexicon_dir", "chat.word_budget", "server.bind_addr",
    "server.cors_origin",  "storage.data_dir",
};

bool is_key_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

std::string error_at(std::size_t line, const std::string& msg)
{
    return "config line " + std::to_string(line) + ": " + msg;
}

// Strips an unquoted trailing comment and decodes a quoted string.
std::string parse_value(std::string_view raw, std::size_t line)
{
    raw = text::trim(raw);
    if (!raw.empty() && raw.front() == '"') {
        std::string out;
        std::size_t i = 1;
        for (; i < raw.size() && raw[i] != '"'; ++i) {
            if (raw[i] != '\\') {
                out += raw[i];
                continue;
            }
            if (++i == raw.size())
                break;
            switch (raw[i]) {
            case '"': out += '"'; break;
            case '\\': out += '\\'; break;
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            default: throw ConfigError(error_at(line, std::string("unknown escape \\") + raw[i]));
            }
        }
        if (i >= raw.size())
            throw ConfigError(error_at(line, "unterminated string"));
        auto rest = text::trim(raw.substr(i + 1));
        if (!rest.empty() && rest.front() != '#')
            throw ConfigError(error_at(line, "unexpected text after string"));
        return out;
    }
    if (auto hash = raw.find('#'); hash != std::string_view::npos)
        raw = raw.substr(0, hash);
    return std::string(text::trim(raw));
}

double to_double(const std::string& key, const std::string& v)
{
    double out = 0;
    const auto* end = v.data() + v.size();
    auto [p, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || p != end || !std::isfinite(out))
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    return out;
}

std::chrono::milliseconds to_timeout(const std::string& key, const std::string& v)
{
    const double secs = to_double(key, v);
    if (secs <= 0)
        throw ConfigError(key + ": must be positive");
    return std::chrono::milliseconds(static_cast<long long>(std::llround(secs * 1000)));
}

std::filesystem::path to_path(const std::string& v, const std::filesystem::path& base)
{
    std::filesystem::path p(v);
    if (p.empty() || p.is_absolute())
        return p;
    return (base / p).lexically_normal();
}

} // namespace

std::map<std::string, std::string> parse_config_text(std::string_view content)
{
    std::map<std::string, std::string> out;
    std::string section;
    std::size_t line_no = 0;
    std::istringstream in{std::string(content)};
    std::string raw_line;
    while (std::getline(in, raw_line)) {
        ++line_no;
        auto line = text::trim(raw_line);
        if (line.empty() || line.front() == '#')
            continue;
        if (line.front() == '[') {
            const auto close = line.find(']');
            if (close == std::string_view::npos)
                throw ConfigError(error_at(line_no, "expected ']'"));
            auto rest = text::trim(line.substr(close + 1));
            if (!rest.empty() && rest.front() != '#')
                throw ConfigError(error_at(line_no, "unexpected text after section header"));
            section = std::string(text::trim(line.substr(1, close - 1)));
            if (section.empty() || !std::all_of(section.begin(), section.end(), is_key_char))
                throw ConfigError(error_at(line_no, "bad section name"));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(error_at(line_no, "expected key = value"));
        const std::string key(text::trim(line.substr(0, eq)));
        if (key.empty() || !std::all_of(key.begin(), key.end(), is_key_char))
            throw ConfigError(error_at(line_no, "bad key '" + key + "'"));
        const auto full = section.empty() ? key : section + "." + key;
        if (out.count(full))
            throw ConfigError(error_at(line_no, "duplicate key '" + full + "'"));
        out[full] = parse_value(line.substr(eq + 1), line_no);
    }
    return out;
}

std::optional<std::string> process_env(const std::string& name)
{
    if (const char* v = std::getenv(name.c_str()))
        return std::string(v);
    return std::nullopt;
}

std::string env_name_for(std::string_view key)
{
    std::string out = "EDUASSIST_";
    for (char c : key)
        out += c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

void ServiceConfig::validate() const
{
    if (provider.kind == chat::ProviderKind::RemoteImage)
        throw ConfigError("provider.kind: remote_image cannot answer text questions");
    try {
        provider.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("provider: ") + e.what());
    }
    if (provider.kind == chat::ProviderKind::Mock && dataset_path.empty())
        throw ConfigError("mock.dataset_path is required for the mock provider");
    if (!image.endpoint_url.empty()) {
        try {
            image.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("image: ") + e.what());
        }
    }
    if (lexicon_dir.empty())
        throw ConfigError("analyzer.lexicon_dir is required");
    if (data_dir.empty())
        throw ConfigError("storage.data_dir is required");
    if (bind_port < 0 || bind_port > 65535)
        throw ConfigError("server.bind_addr: port out of range");
    if (word_budget == 0)
        throw ConfigError("chat.word_budget must be positive");
}

ServiceConfig build_config(const std::map<std::string, std::string>& file_values,
                           const std::filesystem::path& base_dir, const EnvLookup& env)
{
    for (const auto& [key, _] : file_values) {
        if (key.size() >= 8 && key.substr(key.size() - 8) == ".api_key")
            throw ConfigError(key + ": api keys are read from " + env_name_for(key) + " only");
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
            throw ConfigError("unknown config key '" + key + "'");
    }

    // Environment wins over the file; env paths resolve against the cwd.
    auto lookup = [&](const char* key) -> std::optional<std::pair<std::string, bool>> {
        if (auto v = env(env_name_for(key)))
            return std::pair{*v, true};
        if (auto it = file_values.find(key); it != file_values.end())
            return std::pair{it->second, false};
        return std::nullopt;
    };
    auto path_of = [&](const char* key, std::filesystem::path& dst) {
        if (auto v = lookup(key))
            dst = v->second ? std::filesystem::path(v->first) : to_path(v->first, base_dir);
    };

    ServiceConfig cfg;
    cfg.image.kind = chat::ProviderKind::RemoteImage;
    if (auto v = lookup("provider.kind")) {
        try {
            cfg.provider.kind = chat::parse_provider_kind(v->first);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("provider.kind: ") + e.what());
        }
    }
    if (auto v = lookup("provider.endpoint_url"))
        cfg.provider.endpoint_url = v->first;
    if (auto v = lookup("provider.model_name"))
        cfg.provider.model_name = v->first;
    if (auto v = lookup("provider.timeout_secs"))
        cfg.provider.timeout = to_timeout("provider.timeout_secs", v->first);
    if (auto v = env("EDUASSIST_PROVIDER_API_KEY"))
        cfg.provider.api_key = *v;
    if (!cfg.provider.is_remote())
        cfg.provider.api_key.clear();

    if (auto v = lookup("image.endpoint_url"))
        cfg.image.endpoint_url = v->first;
    cfg.image.model_name = cfg.provider.model_name;
    if (auto v = lookup("image.model_name"))
        cfg.image.model_name = v->first;
    cfg.image.timeout = cfg.provider.timeout;
    if (auto v = lookup("image.timeout_secs"))
        cfg.image.timeout = to_timeout("image.timeout_secs", v->first);
    if (auto v = env("EDUASSIST_IMAGE_API_KEY"))
        cfg.image.api_key = *v;
    else if (auto pv = env("EDUASSIST_PROVIDER_API_KEY"))
        cfg.image.api_key = *pv;
    if (cfg.image.endpoint_url.empty())
        cfg.image.api_key.clear();

    path_of("mock.dataset_path", cfg.dataset_path);
    if (auto v = lookup("mock.similarity_threshold"))
        cfg.provider.similarity_threshold = to_double("mock.similarity_threshold", v->first);
    path_of("analyzer.lexicon_dir", cfg.lexicon_dir);
    path_of("storage.data_dir", cfg.data_dir);
    if (auto v = lookup("chat.word_budget")) {
        const double b = to_double("chat.word_budget", v->first);
        if (b < 1 || b != std::floor(b))
            throw ConfigError("chat.word_budget must be a positive integer");
        cfg.word_budget = static_cast<std::size_t>(b);
    }
    if (auto v = lookup("server.cors_origin"))
        cfg.cors_origin = v->first;
    if (auto v = lookup("server.bind_addr")) {
        const auto& addr = v->first;
        const auto colon = addr.rfind(':');
        if (colon == std::string::npos || colon == 0)
            throw ConfigError("server.bind_addr: expected host:port, got '" + addr + "'");
        cfg.bind_host = addr.substr(0, colon);
        const auto port = addr.substr(colon + 1);
        int p = -1;
        auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), p);
        if (ec != std::errc() || ptr != port.data() + port.size())
            throw ConfigError("server.bind_addr: bad port '" + port + "'");
        cfg.bind_port = p;
    }

    cfg.validate();
    return cfg;
}

ServiceConfig load_config(const std::filesystem::path& path, const EnvLookup& env)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return build_config(parse_config_text(ss.str()), path.parent_path(), env);
}

} // namespace eduassist::service
