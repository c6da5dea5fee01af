#pragma once

#include "eduassist/chat/prompt_index.hpp"
#include "eduassist/chat/provider.hpp"
#include "eduassist/feedback/analyzer.hpp"
#include "eduassist/feedback/lexicon.hpp"
#include "eduassist/service/config.hpp"
#include "eduassist/service/store.hpp"

#include <json.hpp>

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eduassist::service {

inline constexpr std::size_t kMaxUploadBytes = 10 * 1024 * 1024;

std::string_view service_version();

struct Response {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
    std::vector<std::pair<std::string, std::string>> headers;
};

// {"error": code, "detail": detail} plus any extra fields.
Response error_response(int status, std::string_view code, std::string_view detail,
                        const nlohmann::json& extra = nlohmann::json::object());

struct Upload {
    std::string filename;
    std::string content_type;
    std::string content;
};

// Request handlers independent of the HTTP transport. Safe to call from
// many threads at once.
class Service {
public:
    explicit Service(ServiceConfig cfg);

    // Test seam: substitute the text provider chosen by the config.
    Service(ServiceConfig cfg, std::shared_ptr<const chat::CompletionProvider> text_provider);

    const ServiceConfig& config() const { return cfg_; }
    RecordStore& store() { return store_; }

    Response chat_text(std::string_view json_body);
    Response chat_image(const std::optional<Upload>& image, std::string_view question);
    Response erd_compile(std::string_view json_body);
    Response analyze(const std::optional<Upload>& file, std::optional<std::string_view> format);
    Response get_report(std::string_view id);
    Response health() const;

private:
    std::shared_ptr<std::mutex> session_lock(const std::string& id);

    ServiceConfig cfg_;
    feedback::Lexicon lexicon_;
    feedback::AnalyzerConfig analyzer_cfg_;
    std::shared_ptr<const chat::CompletionProvider> text_provider_;
    RecordStore store_;

    std::mutex locks_mutex_;
    std::map<std::string, std::shared_ptr<std::mutex>> session_locks_;
};

} // namespace eduassist::service
