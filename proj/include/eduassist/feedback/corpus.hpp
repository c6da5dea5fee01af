#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eduassist::feedback {

struct Comment {
    std::size_t index = 0;
    std::string text; // trimmed, nonempty

    friend bool operator==(const Comment&, const Comment&) = default;
};

enum class InputFormat { Plain, Csv };

InputFormat parse_input_format(std::string_view name); // "plain" | "csv"

// Guesses from a file name: ".csv" (any case) is CSV, anything else plain.
InputFormat format_from_filename(std::string_view filename);

class IngestError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DecodeError : public IngestError {
public:
    using IngestError::IngestError;
};

class MissingCommentColumn : public IngestError {
public:
    MissingCommentColumn() : IngestError("csv header has no 'comment' column") {}
};

class EmptyCorpus : public IngestError {
public:
    EmptyCorpus() : IngestError("no comments in input") {}
};

// RFC 4180 records. Accepts LF or CRLF line breaks, quoted fields with
// embedded separators/newlines and "" escapes. Throws DecodeError on an
// unterminated quote or a stray quote inside an unquoted field.
std::vector<std::vector<std::string>> parse_csv(std::string_view data);

// plain: one comment per line, blank lines skipped.
// csv: header row required; the column named `comment` (case-insensitive)
// provides the text; rows with an empty comment are skipped.
std::vector<Comment> ingest_comments(std::string_view raw, InputFormat format);

} // namespace eduassist::feedback
