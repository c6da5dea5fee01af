#include "eduassist/chat/dataset.hpp"

#include "eduassist/text.hpp"

#include <json.hpp>

#include <map>

namespace eduassist::chat {

namespace {

Diagnostic error_at(std::size_t line, std::string msg)
{
    return {Severity::Error, line, 0, "malformed_line", std::move(msg)};
}

} // namespace

DatasetParse parse_finetune_dataset(std::string_view raw)
{
    DatasetParse out;
    std::map<std::string, std::size_t> first_seen;

    std::size_t start = 0;
    std::size_t line_no = 0;
    while (start < raw.size()) {
        auto nl = raw.find('\n', start);
        if (nl == std::string_view::npos)
            nl = raw.size();
        const auto line = raw.substr(start, nl - start);
        start = nl + 1;
        ++line_no;

        if (text::trim(line).empty())
            continue;

        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            out.diagnostics.push_back(error_at(line_no, std::string("invalid JSON: ") + e.what()));
            continue;
        }
        if (!obj.is_object()) {
            out.diagnostics.push_back(error_at(line_no, "expected a JSON object"));
            continue;
        }

        std::string fields[2];
        bool ok = true;
        const char* names[2] = {"prompt", "completion"};
        for (int i = 0; i < 2 && ok; ++i) {
            auto it = obj.find(names[i]);
            if (it == obj.end()) {
                out.diagnostics.push_back(error_at(line_no, std::string("missing field ") + names[i]));
                ok = false;
            } else if (!it->is_string()) {
                out.diagnostics.push_back(error_at(line_no, std::string("field ") + names[i] + " must be a string"));
                ok = false;
            } else {
                fields[i] = it->get<std::string>();
                if (text::trim(fields[i]).empty()) {
                    out.diagnostics.push_back(error_at(line_no, std::string("field ") + names[i] + " is empty"));
                    ok = false;
                }
            }
        }
        if (!ok)
            continue;

        std::string extra;
        for (const auto& [key, value] : obj.items()) {
            if (key != "prompt" && key != "completion")
                extra += (extra.empty() ? "'" : ", '") + key + "'";
        }
        if (!extra.empty())
            out.diagnostics.push_back({Severity::Warning, line_no, 0, "unknown_key", "unknown key(s) " + extra + " ignored"});

        auto [it, inserted] = first_seen.emplace(fields[0], line_no);
        if (!inserted)
            out.diagnostics.push_back({Severity::Warning, line_no, 0, "duplicate_prompt",
                                       "duplicate prompt (first seen on line " + std::to_string(it->second) + ")"});

        out.pairs.push_back({std::move(fields[0]), std::move(fields[1]), line_no});
    }

    if (out.pairs.empty())
        throw EmptyDataset(std::move(out.diagnostics));
    return out;
}

std::string serialize_finetune_dataset(const std::vector<FinetunePair>& pairs)
{
    std::string out;
    for (const auto& p : pairs) {
        nlohmann::ordered_json obj;
        obj["prompt"] = p.prompt;
        obj["completion"] = p.completion;
        out += obj.dump() + "\n";
    }
    return out;
}

} // namespace eduassist::chat
