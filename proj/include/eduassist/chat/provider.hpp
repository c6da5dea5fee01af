#pragma once

#include "eduassist/chat/conversation.hpp"
#include "eduassist/chat/prompt_index.hpp"

#include <json.hpp>

#include <chrono>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eduassist::chat {

enum class ProviderKind { Mock, RemoteText, RemoteImage };

std::string_view to_string(ProviderKind k);
ProviderKind parse_provider_kind(std::string_view s); // throws std::invalid_argument

struct ProviderConfig {
    ProviderKind kind = ProviderKind::Mock;
    std::string endpoint_url;
    std::string api_key;
    std::string model_name;
    std::chrono::milliseconds timeout{std::chrono::seconds(30)};
    double similarity_threshold = kDefaultSimilarityThreshold; // mock only

    bool is_remote() const { return kind != ProviderKind::Mock; }

    // Endpoint and API key are required exactly for remote kinds; the
    // threshold must lie in [0, 1]. Throws std::invalid_argument.
    void validate() const;
};

enum class ProviderErrorKind {
    Timeout,
    AuthFailure,
    RateLimited,
    MalformedResponse,
    UnsupportedMediaType,
    PayloadTooLarge,
    Unreachable,
    UpstreamError,
};

std::string_view to_string(ProviderErrorKind k);

class ProviderError : public std::runtime_error {
public:
    ProviderError(ProviderErrorKind kind, const std::string& detail,
                  std::optional<std::string> retry_after = std::nullopt);

    ProviderErrorKind kind() const noexcept { return kind_; }
    // Verbatim Retry-After header of a 429 response, when present.
    const std::optional<std::string>& retry_after() const noexcept { return retry_after_; }

private:
    ProviderErrorKind kind_;
    std::optional<std::string> retry_after_;
};

inline constexpr std::size_t kMaxImageBytes = 10 * 1024 * 1024;

struct ImageInput {
    std::string bytes;
    std::string media_type; // "image/png" or "image/jpeg"
};

// Canonical media type for PNG/JPEG ("image/jpg" is accepted as JPEG), or
// nullopt for anything else.
std::optional<std::string> normalize_image_media_type(std::string_view media_type);

// Media type from magic bytes, or nullopt when neither PNG nor JPEG.
std::optional<std::string> sniff_image_media_type(std::string_view bytes);

std::string base64_encode(std::string_view bytes);

// {"model": ..., "messages": [{"role": ..., "content": ...}, ...]} with the
// truncated history followed by the question as the final user message.
nlohmann::json build_text_request(const ProviderConfig& cfg, const Conversation& history, std::string_view question);

// Single user message whose content is
// [{"type":"text","text":q}, {"type":"image","media_type":m,"data":base64}].
nlohmann::json build_image_request(const ProviderConfig& cfg, const ImageInput& image, std::string_view question);

// Extracts choices[0].message.content; throws ProviderError(MalformedResponse).
std::string parse_completion_response(std::string_view body);

// POSTs to a remote_text endpoint. Throws ProviderError.
Completion remote_complete(const ProviderConfig& cfg, const Conversation& history, std::string_view question);

// Size and media-type gates run before any network traffic. Throws ProviderError.
Completion describe_image(const ProviderConfig& cfg, const ImageInput& image, std::string_view question);

// Answers a question in the context of a conversation.
class CompletionProvider {
public:
    virtual ~CompletionProvider() = default;
    virtual Completion complete(const Conversation& history, std::string_view question) const = 0;
};

class MockProvider final : public CompletionProvider {
public:
    MockProvider(std::shared_ptr<const PromptIndex> index, double threshold = kDefaultSimilarityThreshold);

    // History is ignored: retrieval only looks at the question.
    Completion complete(const Conversation& history, std::string_view question) const override;

private:
    std::shared_ptr<const PromptIndex> index_;
    double threshold_;
};

class RemoteTextProvider final : public CompletionProvider {
public:
    explicit RemoteTextProvider(ProviderConfig cfg);

    Completion complete(const Conversation& history, std::string_view question) const override;

private:
    ProviderConfig cfg_;
};

} // namespace eduassist::chat
