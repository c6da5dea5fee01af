#pragma once

#include "eduassist/diagnostic.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eduassist::chat {

// One training record: {"prompt": "<prompt text>", "completion": "<ideal generated text>"}.
struct FinetunePair {
    std::string prompt;
    std::string completion;
    std::size_t line_no = 0; // 1-based source line

    friend bool operator==(const FinetunePair&, const FinetunePair&) = default;
};

struct DatasetParse {
    std::vector<FinetunePair> pairs;
    std::vector<Diagnostic> diagnostics;
};

class EmptyDataset : public std::runtime_error {
public:
    explicit EmptyDataset(std::vector<Diagnostic> diagnostics)
        : std::runtime_error("dataset contains no well-formed prompt/completion pairs"),
          diagnostics_(std::move(diagnostics))
    {
    }

    const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

// JSON Lines, one object per line. Malformed lines are skipped with one
// error diagnostic each; unknown keys and repeated prompts only warn. Blank
// lines are ignored. Throws EmptyDataset when nothing survives.
DatasetParse parse_finetune_dataset(std::string_view raw);

// One `{"prompt": ..., "completion": ...}` object per line, newline-terminated.
std::string serialize_finetune_dataset(const std::vector<FinetunePair>& pairs);

} // namespace eduassist::chat
