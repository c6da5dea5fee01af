#include "eduassist/text.hpp"

#include <cstdint>

namespace eduassist::text {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

struct Decoded {
    char32_t cp;
    std::size_t len;
    bool valid;
};

Decoded decode(std::string_view s, std::size_t pos)
{
    const auto b0 = static_cast<unsigned char>(s[pos]);
    if (b0 < 0x80)
        return {b0, 1, true};

    std::size_t len = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2; cp = b0 & 0x1F; min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3; cp = b0 & 0x0F; min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4; cp = b0 & 0x07; min = 0x10000;
    } else {
        return {kReplacement, 1, false};
    }
    if (pos + len > s.size())
        return {kReplacement, 1, false};
    for (std::size_t i = 1; i < len; ++i) {
        const auto b = static_cast<unsigned char>(s[pos + i]);
        if ((b & 0xC0) != 0x80)
            return {kReplacement, 1, false};
        cp = (cp << 6) | (b & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
        return {kReplacement, 1, false};
    return {cp, len, true};
}

void append_utf8(std::string& out, char32_t cp)
{
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

bool is_space(char32_t cp)
{
    return (cp >= 0x09 && cp <= 0x0D) || cp == 0x20 || cp == 0x85 || cp == 0xA0
        || cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028
        || cp == 0x2029 || cp == 0x202F || cp == 0x205F || cp == 0x3000;
}

// Coarse classification: outside ASCII, everything that is not a known
// punctuation/symbol block is treated as a letter.
bool is_alnum(char32_t cp)
{
    if (cp < 0x80)
        return (cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
    if (is_space(cp) || cp == kReplacement)
        return false;
    if (cp <= 0xBF) {
        switch (cp) {
        case 0xAA: case 0xB2: case 0xB3: case 0xB5: case 0xB9: case 0xBA:
        case 0xBC: case 0xBD: case 0xBE:
            return true;
        default:
            return false;
        }
    }
    if (cp == 0xD7 || cp == 0xF7)
        return false;
    if (cp >= 0x2000 && cp <= 0x2BFF)
        return false;
    if (cp >= 0x3000 && cp <= 0x303F)
        return false;
    if (cp >= 0xFE30 && cp <= 0xFE4F)
        return false;
    if ((cp >= 0xFF00 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20)
        || (cp >= 0xFF3B && cp <= 0xFF40) || (cp >= 0xFF5B && cp <= 0xFF65))
        return false;
    if (cp >= 0x1F000 && cp <= 0x1FAFF)
        return false;
    return true;
}

char32_t lower(char32_t cp)
{
    if (cp >= 'A' && cp <= 'Z')
        return cp + 0x20;
    if (cp < 0xC0)
        return cp;
    if (cp <= 0xDE && cp != 0xD7)
        return cp + 0x20;
    if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177))
        return (cp % 2 == 0) ? cp + 1 : cp;
    if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E))
        return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2)
        return cp + 0x20;
    if (cp >= 0x410 && cp <= 0x42F)
        return cp + 0x20;
    if (cp >= 0x400 && cp <= 0x40F)
        return cp + 0x50;
    return cp;
}

template <typename Fn>
void for_each_codepoint(std::string_view s, Fn&& fn)
{
    std::size_t pos = 0;
    while (pos < s.size()) {
        const auto d = decode(s, pos);
        fn(d.cp, pos, d.len);
        pos += d.len;
    }
}

} // namespace

bool is_valid_utf8(std::string_view bytes)
{
    std::size_t pos = 0;
    while (pos < bytes.size()) {
        const auto d = decode(bytes, pos);
        if (!d.valid)
            return false;
        pos += d.len;
    }
    return true;
}

std::size_t codepoint_count(std::string_view utf8)
{
    std::size_t n = 0;
    for_each_codepoint(utf8, [&](char32_t, std::size_t, std::size_t) { ++n; });
    return n;
}

std::string to_lower(std::string_view utf8)
{
    std::string out;
    out.reserve(utf8.size());
    std::size_t pos = 0;
    while (pos < utf8.size()) {
        const auto d = decode(utf8, pos);
        if (d.valid)
            append_utf8(out, lower(d.cp));
        else
            out += utf8[pos];
        pos += d.len;
    }
    return out;
}

std::string_view trim(std::string_view utf8)
{
    std::size_t begin = utf8.size();
    std::size_t end = 0;
    for_each_codepoint(utf8, [&](char32_t cp, std::size_t pos, std::size_t len) {
        if (is_space(cp))
            return;
        if (begin == utf8.size())
            begin = pos;
        end = pos + len;
    });
    if (begin >= end)
        return {};
    return utf8.substr(begin, end - begin);
}

std::size_t word_count(std::string_view utf8)
{
    std::size_t n = 0;
    bool in_word = false;
    for_each_codepoint(utf8, [&](char32_t cp, std::size_t, std::size_t) {
        if (is_space(cp)) {
            in_word = false;
        } else if (!in_word) {
            in_word = true;
            ++n;
        }
    });
    return n;
}

std::vector<std::string> tokenize(std::string_view utf8)
{
    std::vector<std::string> tokens;

    // Byte span of the current whitespace-delimited piece, plus the span
    // between its first and last alphanumeric code point.
    std::size_t first_alnum = std::string_view::npos;
    std::size_t last_alnum_end = 0;
    bool in_piece = false;

    auto flush = [&] {
        if (in_piece && first_alnum != std::string_view::npos)
            tokens.push_back(to_lower(utf8.substr(first_alnum, last_alnum_end - first_alnum)));
        in_piece = false;
        first_alnum = std::string_view::npos;
    };

    for_each_codepoint(utf8, [&](char32_t cp, std::size_t pos, std::size_t len) {
        if (is_space(cp)) {
            flush();
            return;
        }
        in_piece = true;
        if (is_alnum(cp)) {
            if (first_alnum == std::string_view::npos)
                first_alnum = pos;
            last_alnum_end = pos + len;
        }
    });
    flush();
    return tokens;
}

} // namespace eduassist::text
