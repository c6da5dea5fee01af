#include "eduassist/service/http.hpp"

#include <iostream>
#include <stdexcept>

namespace eduassist::service {

namespace {

void send(httplib::Response& res, const Response& r)
{
    res.status = r.status;
    for (const auto& [k, v] : r.headers)
        res.set_header(k, v);
    res.set_content(r.body, r.content_type);
}

std::optional<Upload> upload_field(const httplib::Request& req, const char* name)
{
    if (!req.has_file(name))
        return std::nullopt;
    const auto f = req.get_file_value(name);
    return Upload{f.filename, f.content_type, f.content};
}

// Plain form fields arrive as file entries without a filename.
std::optional<std::string> text_field(const httplib::Request& req, const char* name)
{
    if (req.has_file(name))
        return req.get_file_value(name).content;
    if (req.has_param(name))
        return req.get_param_value(name);
    return std::nullopt;
}

bool require_multipart(const httplib::Request& req, httplib::Response& res)
{
    if (req.is_multipart_form_data())
        return true;
    send(res, error_response(400, "bad_request", "expected a multipart/form-data body"));
    return false;
}

const char* reason_code(int status)
{
    switch (status) {
    case 400: return "bad_request";
    case 404: return "not_found";
    case 405: return "method_not_allowed";
    case 413: return "payload_too_large";
    case 415: return "unsupported_media_type";
    default: return status >= 500 ? "internal_error" : "http_error";
    }
}

} // namespace

void mount_routes(httplib::Server& server, Service& service)
{
    const auto origin = service.config().cors_origin;
    server.set_default_headers({{"Access-Control-Allow-Origin", origin}});
    // Room above the upload cap so oversized files reach the handlers and
    // receive a structured 413.
    server.set_payload_max_length(kMaxUploadBytes + 2 * 1024 * 1024);

    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.status = 204;
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.set_header("Access-Control-Max-Age", "600");
    });

    server.Get("/api/health", [&service](const httplib::Request&, httplib::Response& res) {
        send(res, service.health());
    });

    server.Post("/api/chat/text", [&service](const httplib::Request& req, httplib::Response& res) {
        send(res, service.chat_text(req.body));
    });

    server.Post("/api/chat/image", [&service](const httplib::Request& req, httplib::Response& res) {
        if (!require_multipart(req, res))
            return;
        send(res, service.chat_image(upload_field(req, "image"), text_field(req, "question").value_or("")));
    });

    server.Post("/api/erd/compile", [&service](const httplib::Request& req, httplib::Response& res) {
        send(res, service.erd_compile(req.body));
    });

    server.Post("/api/analyze", [&service](const httplib::Request& req, httplib::Response& res) {
        if (!require_multipart(req, res))
            return;
        const auto format = text_field(req, "format");
        send(res, service.analyze(upload_field(req, "file"),
                                  format ? std::optional<std::string_view>(*format) : std::nullopt));
    });

    server.Get(R"(/api/reports/([^/]+))", [&service](const httplib::Request& req, httplib::Response& res) {
        send(res, service.get_report(req.matches[1].str()));
    });

    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string detail = "unknown error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            detail = e.what();
        } catch (...) {
        }
        std::cerr << "eduassist: request failed: " << detail << "\n";
        send(res, error_response(500, "internal_error", detail));
    });

    server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
        if (!res.body.empty())
            return;
        const auto status = res.status;
        send(res, error_response(status, reason_code(status),
                                 req.method + " " + req.path + " failed with status " + std::to_string(status)));
    });
}

HttpServer::HttpServer(Service& service)
{
    mount_routes(server_, service);
}

HttpServer::~HttpServer()
{
    stop();
}

int HttpServer::bind(const std::string& host, int port)
{
    if (port == 0)
        port_ = server_.bind_to_any_port(host);
    else
        port_ = server_.bind_to_port(host, port) ? port : -1;
    if (port_ < 0)
        throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
    return port_;
}

void HttpServer::listen()
{
    server_.listen_after_bind();
}

int HttpServer::start(const std::string& host, int port)
{
    const int p = bind(host, port);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
    return p;
}

void HttpServer::stop()
{
    server_.stop();
    if (thread_.joinable())
        thread_.join();
}

} // namespace eduassist::service
