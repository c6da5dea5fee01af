#include "eduassist/feedback/corpus.hpp"

#include "eduassist/text.hpp"

#include <algorithm>

namespace eduassist::feedback {

namespace {

std::string ascii_lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c);
    });
    return out;
}

std::string_view strip_bom(std::string_view s)
{
    if (s.substr(0, 3) == "\xEF\xBB\xBF")
        s.remove_prefix(3);
    return s;
}

void add_comment(std::vector<Comment>& out, std::string_view raw)
{
    auto t = text::trim(raw);
    if (!t.empty())
        out.push_back({out.size(), std::string(t)});
}

} // namespace

InputFormat parse_input_format(std::string_view name)
{
    const auto n = ascii_lower(name);
    if (n == "plain" || n == "text" || n == "txt")
        return InputFormat::Plain;
    if (n == "csv")
        return InputFormat::Csv;
    throw std::invalid_argument("unknown input format '" + std::string(name) + "' (expected plain or csv)");
}

InputFormat format_from_filename(std::string_view filename)
{
    const auto lower = ascii_lower(filename);
    return lower.size() >= 4 && lower.compare(lower.size() - 4, 4, ".csv") == 0 ? InputFormat::Csv
                                                                                : InputFormat::Plain;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view data)
{
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;      // inside a quoted field
    bool was_quoted = false;  // current field started with a quote
    bool row_has_content = false;
    std::size_t line = 1;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        was_quoted = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
        row_has_content = false;
    };

    for (std::size_t i = 0; i < data.size(); ++i) {
        const char c = data[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < data.size() && data[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n')
                    ++line;
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            if (!field.empty() || was_quoted)
                throw DecodeError("csv line " + std::to_string(line) + ": unexpected quote in field");
            quoted = true;
            was_quoted = true;
            row_has_content = true;
            break;
        case ',':
            end_field();
            row_has_content = true;
            break;
        case '\r':
            if (i + 1 < data.size() && data[i + 1] == '\n')
                break;
            [[fallthrough]];
        case '\n':
            end_row();
            ++line;
            break;
        default:
            if (was_quoted)
                throw DecodeError("csv line " + std::to_string(line) + ": text after closing quote");
            field += c;
            row_has_content = true;
        }
    }
    if (quoted)
        throw DecodeError("csv: unterminated quoted field");
    if (row_has_content || !field.empty())
        end_row();
    return rows;
}

std::vector<Comment> ingest_comments(std::string_view raw, InputFormat format)
{
    if (!text::is_valid_utf8(raw))
        throw DecodeError("input is not valid UTF-8");
    raw = strip_bom(raw);

    std::vector<Comment> out;
    if (format == InputFormat::Plain) {
        std::size_t start = 0;
        while (start <= raw.size()) {
            auto nl = raw.find('\n', start);
            if (nl == std::string_view::npos)
                nl = raw.size();
            add_comment(out, raw.substr(start, nl - start));
            start = nl + 1;
        }
    } else {
        const auto rows = parse_csv(raw);
        if (rows.empty())
            throw MissingCommentColumn();
        const auto& header = rows.front();
        auto col = std::find_if(header.begin(), header.end(),
                                [](const std::string& h) { return ascii_lower(text::trim(h)) == "comment"; });
        if (col == header.end())
            throw MissingCommentColumn();
        const auto idx = static_cast<std::size_t>(col - header.begin());
        for (std::size_t r = 1; r < rows.size(); ++r)
            if (idx < rows[r].size())
                add_comment(out, rows[r][idx]);
    }
    if (out.empty())
        throw EmptyCorpus();
    return out;
}

} // namespace eduassist::feedback
