#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace eduassist::text {

// Lowercases, splits on Unicode whitespace and strips leading/trailing
// non-alphanumeric code points from each piece. Empty pieces are dropped.
// Internal punctuation (apostrophes, hyphens) survives: "wasn't" stays whole.
std::vector<std::string> tokenize(std::string_view utf8);

// Number of Unicode code points. Invalid sequences count one per byte.
std::size_t codepoint_count(std::string_view utf8);

// Whitespace-delimited word count (no punctuation stripping).
std::size_t word_count(std::string_view utf8);

bool is_valid_utf8(std::string_view bytes);

// Trims Unicode whitespace from both ends.
std::string_view trim(std::string_view utf8);

std::string to_lower(std::string_view utf8);

} // namespace eduassist::text
