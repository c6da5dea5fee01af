#include "eduassist/service/service.hpp"

#include "eduassist/chat/dataset.hpp"
#include "eduassist/erd/compiler.hpp"
#include "eduassist/feedback/corpus.hpp"
#include "eduassist/feedback/report.hpp"
#include "eduassist/text.hpp"

#include <fstream>
#include <sstream>
#include <variant>

#ifndef EDUASSIST_VERSION
#define EDUASSIST_VERSION "0.0.0"
#endif

namespace eduassist::service {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::shared_ptr<const chat::CompletionProvider> make_text_provider(const ServiceConfig& cfg)
{
    if (cfg.provider.is_remote())
        return std::make_shared<chat::RemoteTextProvider>(cfg.provider);
    auto parsed = chat::parse_finetune_dataset(read_file(cfg.dataset_path));
    auto index = std::make_shared<const chat::PromptIndex>(std::move(parsed.pairs));
    return std::make_shared<chat::MockProvider>(std::move(index), cfg.provider.similarity_threshold);
}

Response json_response(int status, const ordered_json& body)
{
    return {status, body.dump() + "\n", "application/json", {}};
}

ordered_json diagnostic_json(const Diagnostic& d)
{
    return {{"severity", to_string(d.severity)},
            {"line", d.line},
            {"column", d.column},
            {"code", d.code},
            {"message", d.message}};
}

ordered_json diagnostics_json(const std::vector<Diagnostic>& ds)
{
    ordered_json out = ordered_json::array();
    for (const auto& d : ds)
        out.push_back(diagnostic_json(d));
    return out;
}

// Parses a JSON object body, or returns the 400 to send back.
std::variant<json, Response> parse_object(std::string_view body)
{
    json doc = json::parse(body, nullptr, false);
    if (doc.is_discarded())
        return error_response(400, "bad_request", "request body is not valid JSON");
    if (!doc.is_object())
        return error_response(400, "bad_request", "request body must be a JSON object");
    return doc;
}

Response provider_failure(const chat::ProviderError& e)
{
    auto r = error_response(502, chat::to_string(e.kind()), e.what());
    if (e.retry_after())
        r.headers.emplace_back("Retry-After", *e.retry_after());
    return r;
}

} // namespace

std::string_view service_version()
{
    return EDUASSIST_VERSION;
}

Response error_response(int status, std::string_view code, std::string_view detail, const json& extra)
{
    ordered_json body = {{"error", code}, {"detail", detail}};
    for (const auto& [k, v] : extra.items())
        body[k] = v;
    return json_response(status, body);
}

Service::Service(ServiceConfig cfg) : Service(cfg, make_text_provider(cfg)) {}

Service::Service(ServiceConfig cfg, std::shared_ptr<const chat::CompletionProvider> text_provider)
    : cfg_(std::move(cfg)),
      lexicon_(feedback::load_lexicon(cfg_.lexicon_dir)),
      text_provider_(std::move(text_provider)),
      store_(cfg_.data_dir)
{
    analyzer_cfg_.check();
}

std::shared_ptr<std::mutex> Service::session_lock(const std::string& id)
{
    std::lock_guard lock(locks_mutex_);
    auto& slot = session_locks_[id];
    if (!slot)
        slot = std::make_shared<std::mutex>();
    return slot;
}

Response Service::chat_text(std::string_view body)
{
    auto parsed = parse_object(body);
    if (auto* r = std::get_if<Response>(&parsed))
        return *r;
    const auto& doc = std::get<json>(parsed);

    const auto q = doc.find("question");
    if (q == doc.end() || !q->is_string() || text::trim(q->get_ref<const std::string&>()).empty())
        return error_response(400, "empty_question", "question must be a nonempty string");
    const auto& question = q->get_ref<const std::string&>();

    std::optional<std::string> session_id;
    if (auto s = doc.find("session_id"); s != doc.end() && !s->is_null()) {
        if (!s->is_string())
            return error_response(400, "bad_request", "session_id must be a string");
        session_id = s->get<std::string>();
    }

    SessionRecord record;
    std::shared_ptr<std::mutex> lock_ptr;
    std::unique_lock<std::mutex> guard;
    if (session_id) {
        if (!is_valid_record_id(*session_id))
            return error_response(404, "unknown_session", "no session with id '" + *session_id + "'");
        lock_ptr = session_lock(*session_id);
        guard = std::unique_lock(*lock_ptr);
        auto stored = store_.get_session(*session_id);
        if (!stored)
            return error_response(404, "unknown_session", "no session with id '" + *session_id + "'");
        record = std::move(*stored);
    } else {
        record.id = store_.new_id();
        record.created_at = record.updated_at = chat::now_ms();
        record.conversation = chat::Conversation(record.id, cfg_.word_budget);
        lock_ptr = session_lock(record.id);
        guard = std::unique_lock(*lock_ptr);
    }

    chat::Completion answer;
    try {
        answer = text_provider_->complete(record.conversation, question);
    } catch (const chat::ProviderError& e) {
        return provider_failure(e);
    }

    const auto asked = chat::now_ms();
    record.conversation.append(chat::Role::User, question, asked);
    const auto answered = chat::now_ms();
    record.conversation.append(chat::Role::Assistant, answer.text, answered);
    record.updated_at = std::max(answered, record.created_at);
    store_.put_session(record);

    return json_response(200, {{"session_id", record.id}, {"answer", answer.text}});
}

Response Service::chat_image(const std::optional<Upload>& image, std::string_view question)
{
    if (!image)
        return error_response(400, "missing_image", "multipart field 'image' is required");
    if (text::trim(question).empty())
        return error_response(400, "empty_question", "question must be a nonempty string");
    if (image->content.size() > chat::kMaxImageBytes)
        return error_response(413, "payload_too_large",
                              "image is " + std::to_string(image->content.size()) + " bytes; limit is "
                                  + std::to_string(chat::kMaxImageBytes));

    auto media = chat::normalize_image_media_type(image->content_type);
    if (!media && (image->content_type.empty() || image->content_type == "application/octet-stream"))
        media = chat::sniff_image_media_type(image->content);
    if (!media)
        return error_response(415, "unsupported_media_type",
                              "expected image/png or image/jpeg, got '" + image->content_type + "'");

    if (cfg_.image.endpoint_url.empty())
        return error_response(502, chat::to_string(chat::ProviderErrorKind::Unreachable),
                              "no image provider is configured");
    try {
        auto c = chat::describe_image(cfg_.image, {image->content, *media}, question);
        return json_response(200, {{"answer", c.text}});
    } catch (const chat::ProviderError& e) {
        if (e.kind() == chat::ProviderErrorKind::PayloadTooLarge)
            return error_response(413, "payload_too_large", e.what());
        if (e.kind() == chat::ProviderErrorKind::UnsupportedMediaType)
            return error_response(415, "unsupported_media_type", e.what());
        return provider_failure(e);
    }
}

Response Service::erd_compile(std::string_view body)
{
    auto parsed = parse_object(body);
    if (auto* r = std::get_if<Response>(&parsed))
        return *r;
    const auto& doc = std::get<json>(parsed);

    const auto src = doc.find("source");
    if (src == doc.end() || !src->is_string() || text::trim(src->get_ref<const std::string&>()).empty())
        return error_response(400, "empty_source", "source must be a nonempty string");

    try {
        const auto out = erd::compile_erd(src->get_ref<const std::string&>());
        ordered_json order = ordered_json::array();
        for (const auto& st : out.script.statements)
            order.push_back(st.table);
        return json_response(200, {{"sql", out.script.str()}, {"order", order}, {"warnings", diagnostics_json(out.warnings)}});
    } catch (const erd::CompileError& e) {
        std::string detail = e.what();
        for (const auto& d : e.diagnostics())
            if (d.is_error()) {
                detail = format_diagnostic(d);
                break;
            }
        return error_response(422, "compile_error", detail,
                              {{"kind", e.kind()},
                               {"stage", erd::to_string(e.stage())},
                               {"diagnostics", json::parse(diagnostics_json(e.diagnostics()).dump())}});
    }
}

Response Service::analyze(const std::optional<Upload>& file, std::optional<std::string_view> format)
{
    if (!file)
        return error_response(400, "missing_file", "multipart field 'file' is required");
    if (file->content.size() > kMaxUploadBytes)
        return error_response(413, "payload_too_large",
                              "file is " + std::to_string(file->content.size()) + " bytes; limit is "
                                  + std::to_string(kMaxUploadBytes));

    feedback::InputFormat fmt;
    try {
        fmt = format && !text::trim(*format).empty() ? feedback::parse_input_format(text::trim(*format))
                                                     : feedback::format_from_filename(file->filename);
    } catch (const std::invalid_argument& e) {
        return error_response(400, "bad_format", e.what());
    }

    std::vector<feedback::Comment> comments;
    try {
        comments = feedback::ingest_comments(file->content, fmt);
    } catch (const feedback::EmptyCorpus& e) {
        return error_response(422, "empty_corpus", e.what());
    } catch (const feedback::DecodeError& e) {
        return error_response(400, "decode_error", e.what());
    } catch (const feedback::MissingCommentColumn& e) {
        return error_response(400, "missing_comment_column", e.what());
    } catch (const feedback::IngestError& e) {
        return error_response(400, "bad_input", e.what());
    }

    ReportRecord record;
    record.id = store_.new_id();
    record.report = feedback::analyze(comments, lexicon_, analyzer_cfg_);
    record.source_filename = file->filename;
    record.created_at = chat::now_ms();
    store_.put_report(record);

    return json_response(200, {{"report_id", record.id},
                               {"report", ordered_json::parse(feedback::to_json(record.report).dump())}});
}

Response Service::get_report(std::string_view id)
{
    auto bytes = store_.get_report_bytes(id);
    if (!bytes)
        return error_response(404, "unknown_report", "no report with id '" + std::string(id) + "'");
    return {200, std::move(*bytes), "application/json", {}};
}

Response Service::health() const
{
    return json_response(200, {{"status", "ok"}, {"version", service_version()}});
}

} // namespace eduassist::service
