#pragma once

#include "eduassist/chat/conversation.hpp"
#include "eduassist/feedback/analyzer.hpp"

#include <json.hpp>

#include <filesystem>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eduassist::service {

struct SessionRecord {
    std::string id;
    chat::Conversation conversation;
    chat::Timestamp created_at{};
    chat::Timestamp updated_at{};

    friend bool operator==(const SessionRecord&, const SessionRecord&) = default;
};

struct ReportRecord {
    std::string id;
    feedback::AnalysisReport report;
    std::string source_filename;
    chat::Timestamp created_at{};

    friend bool operator==(const ReportRecord&, const ReportRecord&) = default;
};

nlohmann::ordered_json to_json(const SessionRecord& r);
nlohmann::ordered_json to_json(const ReportRecord& r);

// Throw std::invalid_argument (or a nlohmann exception) on a bad document.
SessionRecord session_from_json(const nlohmann::json& j);
ReportRecord report_record_from_json(const nlohmann::json& j);

class StoreError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Lowercase canonical UUID text only, so ids are always safe file names.
bool is_valid_record_id(std::string_view id);

// One JSON file per record under <data_dir>/sessions and <data_dir>/reports.
// Writes go to a temporary file in the same directory and are renamed
// into place, so readers never observe a partial document.
class RecordStore {
public:
    explicit RecordStore(std::filesystem::path data_dir);

    const std::filesystem::path& data_dir() const { return dir_; }

    std::string new_id();

    void put_session(const SessionRecord& r);
    std::optional<SessionRecord> get_session(std::string_view id) const;

    // Returns the serialized document exactly as written.
    std::string put_report(const ReportRecord& r);
    std::optional<ReportRecord> get_report(std::string_view id) const;
    std::optional<std::string> get_report_bytes(std::string_view id) const;

private:
    std::filesystem::path path_for(const char* kind, std::string_view id) const;
    void write_atomically(const std::filesystem::path& target, const std::string& bytes);
    std::optional<std::string> read_bytes(const char* kind, std::string_view id) const;

    std::filesystem::path dir_;
    std::mutex tmp_mutex_;
    unsigned long long tmp_counter_ = 0;
};

} // namespace eduassist::service
