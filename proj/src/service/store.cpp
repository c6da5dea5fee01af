#include "eduassist/service/store.hpp"

#include "eduassist/feedback/report.hpp"

#include <boost/uuid/random_generator.hpp>
#include <boost/uuid/uuid_io.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace eduassist::service {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

chat::Timestamp timestamp_from(const json& j)
{
    auto t = chat::parse_timestamp(j.get<std::string>());
    if (!t)
        throw std::invalid_argument("bad timestamp '" + j.get<std::string>() + "'");
    return *t;
}

} // namespace

ordered_json to_json(const SessionRecord& r)
{
    ordered_json turns = ordered_json::array();
    for (const auto& t : r.conversation.turns())
        turns.push_back({{"role", chat::to_string(t.role)}, {"text", t.text}, {"at", chat::format_timestamp(t.at)}});
    return {{"id", r.id},
            {"created_at", chat::format_timestamp(r.created_at)},
            {"updated_at", chat::format_timestamp(r.updated_at)},
            {"word_budget", r.conversation.word_budget()},
            {"turns", std::move(turns)}};
}

ordered_json to_json(const ReportRecord& r)
{
    return {{"id", r.id},
            {"source_filename", r.source_filename},
            {"created_at", chat::format_timestamp(r.created_at)},
            {"report", ordered_json::parse(feedback::to_json(r.report).dump())}};
}

SessionRecord session_from_json(const json& j)
{
    SessionRecord r;
    r.id = j.at("id").get<std::string>();
    r.created_at = timestamp_from(j.at("created_at"));
    r.updated_at = timestamp_from(j.at("updated_at"));
    if (r.updated_at < r.created_at)
        throw std::invalid_argument("updated_at precedes created_at");
    std::vector<chat::Turn> turns;
    for (const auto& t : j.at("turns")) {
        auto role = chat::parse_role(t.at("role").get<std::string>());
        if (!role)
            throw std::invalid_argument("bad role");
        turns.push_back({*role, t.at("text").get<std::string>(), timestamp_from(t.at("at"))});
    }
    r.conversation = chat::Conversation::from_turns(r.id, j.at("word_budget").get<std::size_t>(), std::move(turns));
    return r;
}

ReportRecord report_record_from_json(const json& j)
{
    ReportRecord r;
    r.id = j.at("id").get<std::string>();
    r.source_filename = j.at("source_filename").get<std::string>();
    r.created_at = timestamp_from(j.at("created_at"));
    r.report = feedback::report_from_json(j.at("report"));
    return r;
}

bool is_valid_record_id(std::string_view id)
{
    if (id.size() != 36)
        return false;
    for (std::size_t i = 0; i < id.size(); ++i) {
        const char c = id[i];
        if (i == 8 || i == 13 || i == 18 || i == 23) {
            if (c != '-')
                return false;
        } else if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) {
            return false;
        }
    }
    return true;
}

RecordStore::RecordStore(std::filesystem::path data_dir) : dir_(std::move(data_dir))
{
    std::error_code ec;
    for (const char* sub : {"sessions", "reports"}) {
        std::filesystem::create_directories(dir_ / sub, ec);
        if (ec)
            throw StoreError("cannot create " + (dir_ / sub).string() + ": " + ec.message());
    }
}

std::string RecordStore::new_id()
{
    static thread_local boost::uuids::random_generator gen;
    return boost::uuids::to_string(gen());
}

std::filesystem::path RecordStore::path_for(const char* kind, std::string_view id) const
{
    return dir_ / kind / (std::string(id) + ".json");
}

void RecordStore::write_atomically(const std::filesystem::path& target, const std::string& bytes)
{
    unsigned long long n;
    {
        std::lock_guard lock(tmp_mutex_);
        n = ++tmp_counter_;
    }
    auto tmp = target;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(n);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << bytes;
        out.flush();
        if (!out)
            throw StoreError("cannot write " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw StoreError("cannot rename into " + target.string());
    }
}

std::optional<std::string> RecordStore::read_bytes(const char* kind, std::string_view id) const
{
    if (!is_valid_record_id(id))
        return std::nullopt;
    std::ifstream in(path_for(kind, id), std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void RecordStore::put_session(const SessionRecord& r)
{
    if (!is_valid_record_id(r.id))
        throw StoreError("bad record id '" + r.id + "'");
    write_atomically(path_for("sessions", r.id), to_json(r).dump(2) + "\n");
}

std::optional<SessionRecord> RecordStore::get_session(std::string_view id) const
{
    auto bytes = read_bytes("sessions", id);
    if (!bytes)
        return std::nullopt;
    try {
        return session_from_json(json::parse(*bytes));
    } catch (const std::exception& e) {
        throw StoreError("corrupt session record " + std::string(id) + ": " + e.what());
    }
}

std::string RecordStore::put_report(const ReportRecord& r)
{
    if (!is_valid_record_id(r.id))
        throw StoreError("bad record id '" + r.id + "'");
    auto bytes = to_json(r).dump(2) + "\n";
    write_atomically(path_for("reports", r.id), bytes);
    return bytes;
}

std::optional<std::string> RecordStore::get_report_bytes(std::string_view id) const
{
    return read_bytes("reports", id);
}

std::optional<ReportRecord> RecordStore::get_report(std::string_view id) const
{
    auto bytes = read_bytes("reports", id);
    if (!bytes)
        return std::nullopt;
    try {
        return report_record_from_json(json::parse(*bytes));
    } catch (const std::exception& e) {
        throw StoreError("corrupt report record " + std::string(id) + ": " + e.what());
    }
}

} // namespace eduassist::service
