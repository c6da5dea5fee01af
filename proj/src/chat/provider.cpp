#include "eduassist/chat/provider.hpp"

#include "eduassist/text.hpp"

#include <httplib.h>

#include <boost/archive/iterators/base64_from_binary.hpp>
#include <boost/archive/iterators/transform_width.hpp>

#include <regex>

namespace eduassist::chat {

namespace {

struct Endpoint {
    std::string scheme_host_port;
    std::string path;
};

Endpoint split_url(const std::string& url)
{
    static const std::regex re(R"(^(https?://[^/?#]+)(/[^#]*)?$)", std::regex::icase);
    std::smatch m;
    if (!std::regex_match(url, m, re))
        throw ProviderError(ProviderErrorKind::Unreachable, "invalid endpoint url '" + url + "'");
    return {m[1].str(), m[2].matched ? m[2].str() : std::string("/")};
}

std::string post_json(const ProviderConfig& cfg, const nlohmann::json& body)
{
    const auto ep = split_url(cfg.endpoint_url);
    httplib::Client client(ep.scheme_host_port);
    if (!client.is_valid())
        throw ProviderError(ProviderErrorKind::Unreachable, "unsupported endpoint '" + cfg.endpoint_url + "'");

    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(cfg.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(cfg.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    client.set_bearer_token_auth(cfg.api_key);

    const auto started = std::chrono::steady_clock::now();
    auto res = client.Post(ep.path, body.dump(), "application/json");
    if (!res) {
        const auto err = res.error();
        const auto elapsed = std::chrono::steady_clock::now() - started;
        const bool timed_out = err == httplib::Error::ConnectionTimeout
            || ((err == httplib::Error::Read || err == httplib::Error::Write) && elapsed >= cfg.timeout * 9 / 10);
        if (timed_out)
            throw ProviderError(ProviderErrorKind::Timeout,
                                "no response within " + std::to_string(cfg.timeout.count()) + " ms");
        throw ProviderError(ProviderErrorKind::Unreachable, "request failed: " + httplib::to_string(err));
    }

    const int status = res->status;
    if (status == 401 || status == 403)
        throw ProviderError(ProviderErrorKind::AuthFailure, "provider rejected credentials (HTTP " + std::to_string(status) + ")");
    if (status == 429) {
        std::optional<std::string> retry;
        if (res->has_header("Retry-After"))
            retry = res->get_header_value("Retry-After");
        throw ProviderError(ProviderErrorKind::RateLimited,
                            "provider rate limit hit" + (retry ? " (retry after " + *retry + ")" : std::string()),
                            retry);
    }
    if (status < 200 || status >= 300)
        throw ProviderError(ProviderErrorKind::UpstreamError, "provider returned HTTP " + std::to_string(status));
    return res->body;
}

void require_kind(const ProviderConfig& cfg, ProviderKind kind)
{
    if (cfg.kind != kind)
        throw std::invalid_argument("provider is configured as " + std::string(to_string(cfg.kind)) + ", not "
                                    + std::string(to_string(kind)));
    cfg.validate();
}

} // namespace

std::string_view to_string(ProviderKind k)
{
    switch (k) {
    case ProviderKind::Mock: return "mock";
    case ProviderKind::RemoteText: return "remote_text";
    case ProviderKind::RemoteImage: return "remote_image";
    }
    return "?";
}

ProviderKind parse_provider_kind(std::string_view s)
{
    if (s == "mock")
        return ProviderKind::Mock;
    if (s == "remote_text")
        return ProviderKind::RemoteText;
    if (s == "remote_image")
        return ProviderKind::RemoteImage;
    throw std::invalid_argument("unknown provider kind '" + std::string(s) + "'");
}

void ProviderConfig::validate() const
{
    if (is_remote()) {
        if (endpoint_url.empty())
            throw std::invalid_argument("remote provider needs an endpoint url");
        if (api_key.empty())
            throw std::invalid_argument("remote provider needs an api key");
    } else if (!endpoint_url.empty() || !api_key.empty()) {
        throw std::invalid_argument("mock provider takes no endpoint url or api key");
    }
    if (!(similarity_threshold >= 0.0 && similarity_threshold <= 1.0))
        throw std::invalid_argument("similarity threshold must lie in [0, 1]");
    if (timeout.count() <= 0)
        throw std::invalid_argument("timeout must be positive");
}

std::string_view to_string(ProviderErrorKind k)
{
    switch (k) {
    case ProviderErrorKind::Timeout: return "timeout";
    case ProviderErrorKind::AuthFailure: return "auth_failure";
    case ProviderErrorKind::RateLimited: return "rate_limited";
    case ProviderErrorKind::MalformedResponse: return "malformed_response";
    case ProviderErrorKind::UnsupportedMediaType: return "unsupported_media_type";
    case ProviderErrorKind::PayloadTooLarge: return "payload_too_large";
    case ProviderErrorKind::Unreachable: return "unreachable";
    case ProviderErrorKind::UpstreamError: return "upstream_error";
    }
    return "?";
}

ProviderError::ProviderError(ProviderErrorKind kind, const std::string& detail, std::optional<std::string> retry_after)
    : std::runtime_error(detail), kind_(kind), retry_after_(std::move(retry_after))
{
}

std::optional<std::string> normalize_image_media_type(std::string_view media_type)
{
    std::string t;
    for (char c : media_type) {
        if (c == ';')
            break;
        if (c != ' ')
            t += static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c);
    }
    if (t == "image/png")
        return t;
    if (t == "image/jpeg" || t == "image/jpg")
        return std::string("image/jpeg");
    return std::nullopt;
}

std::optional<std::string> sniff_image_media_type(std::string_view bytes)
{
    if (bytes.substr(0, 8) == std::string_view("\x89PNG\r\n\x1a\n", 8))
        return std::string("image/png");
    if (bytes.substr(0, 3) == "\xFF\xD8\xFF")
        return std::string("image/jpeg");
    return std::nullopt;
}

std::string base64_encode(std::string_view bytes)
{
    using namespace boost::archive::iterators;
    using It = base64_from_binary<transform_width<std::string_view::const_iterator, 6, 8>>;
    std::string out(It(bytes.begin()), It(bytes.end()));
    out.append((3 - bytes.size() % 3) % 3, '=');
    return out;
}

nlohmann::json build_text_request(const ProviderConfig& cfg, const Conversation& history, std::string_view question)
{
    // The question joins the history before truncation so it always survives.
    auto turns = history.turns();
    turns.push_back({Role::User, std::string(question), now_ms()});
    const auto kept = truncate_history(Conversation::from_turns(history.id(), history.word_budget(), std::move(turns)));

    auto messages = nlohmann::json::array();
    for (const auto& t : kept.turns())
        messages.push_back({{"role", to_string(t.role)}, {"content", t.text}});
    return {{"model", cfg.model_name}, {"messages", messages}};
}

nlohmann::json build_image_request(const ProviderConfig& cfg, const ImageInput& image, std::string_view question)
{
    nlohmann::json content = nlohmann::json::array();
    content.push_back({{"type", "text"}, {"text", question}});
    content.push_back({{"type", "image"}, {"media_type", image.media_type}, {"data", base64_encode(image.bytes)}});
    return {{"model", cfg.model_name}, {"messages", {{{"role", "user"}, {"content", content}}}}};
}

std::string parse_completion_response(std::string_view body)
{
    try {
        const auto doc = nlohmann::json::parse(body);
        return doc.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ProviderError(ProviderErrorKind::MalformedResponse,
                            std::string("response lacks choices[0].message.content: ") + e.what());
    }
}

Completion remote_complete(const ProviderConfig& cfg, const Conversation& history, std::string_view question)
{
    require_kind(cfg, ProviderKind::RemoteText);
    const auto body = post_json(cfg, build_text_request(cfg, history, question));
    return {parse_completion_response(body), 0.0, std::nullopt};
}

Completion describe_image(const ProviderConfig& cfg, const ImageInput& image, std::string_view question)
{
    require_kind(cfg, ProviderKind::RemoteImage);
    if (image.bytes.size() > kMaxImageBytes)
        throw ProviderError(ProviderErrorKind::PayloadTooLarge,
                            "image is " + std::to_string(image.bytes.size()) + " bytes; limit is "
                                + std::to_string(kMaxImageBytes));
    const auto media = normalize_image_media_type(image.media_type);
    if (!media)
        throw ProviderError(ProviderErrorKind::UnsupportedMediaType,
                            "unsupported media type '" + image.media_type + "' (PNG or JPEG only)");
    const ImageInput normalized{image.bytes, *media};
    const auto body = post_json(cfg, build_image_request(cfg, normalized, question));
    return {parse_completion_response(body), 0.0, std::nullopt};
}

MockProvider::MockProvider(std::shared_ptr<const PromptIndex> index, double threshold)
    : index_(std::move(index)), threshold_(threshold)
{
    if (!index_)
        throw std::invalid_argument("mock provider needs an index");
}

Completion MockProvider::complete(const Conversation&, std::string_view question) const
{
    return mock_complete(*index_, question, threshold_);
}

RemoteTextProvider::RemoteTextProvider(ProviderConfig cfg)
    : cfg_(std::move(cfg))
{
    require_kind(cfg_, ProviderKind::RemoteText);
}

Completion RemoteTextProvider::complete(const Conversation& history, std::string_view question) const
{
    return remote_complete(cfg_, history, question);
}

} // namespace eduassist::chat
