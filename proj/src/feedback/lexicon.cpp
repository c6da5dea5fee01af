#include "eduassist/feedback/lexicon.hpp"

#include "eduassist/text.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace eduassist::feedback {

namespace {

constexpr std::array<std::string_view, kEmotionCount> kEmotionNames = {
    "anger", "anticipation", "disgust", "fear", "joy", "sadness", "surprise", "trust"};

struct Line {
    std::size_t number;
    std::string_view text;
};

// Non-blank, non-comment lines with surrounding whitespace removed.
std::vector<Line> content_lines(std::string_view content)
{
    std::vector<Line> out;
    std::size_t start = 0;
    std::size_t number = 1;
    while (start <= content.size()) {
        auto nl = content.find('\n', start);
        if (nl == std::string_view::npos)
            nl = content.size();
        auto line = text::trim(content.substr(start, nl - start));
        if (!line.empty() && line.front() != '#')
            out.push_back({number, line});
        start = nl + 1;
        ++number;
    }
    return out;
}

std::pair<std::string, std::string_view> split_tab(const Line& line, const char* file)
{
    const auto tab = line.text.find('\t');
    if (tab == std::string_view::npos)
        throw LexiconError(std::string(file) + " line " + std::to_string(line.number) + ": expected word<TAB>value");
    const auto word = text::trim(line.text.substr(0, tab));
    const auto value = text::trim(line.text.substr(tab + 1));
    if (word.empty() || value.empty())
        throw LexiconError(std::string(file) + " line " + std::to_string(line.number) + ": empty word or value");
    return {text::to_lower(word), value};
}

std::string read_file(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw LexiconError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

std::string_view to_string(Emotion e)
{
    return kEmotionNames[static_cast<std::size_t>(e)];
}

std::optional<Emotion> parse_emotion(std::string_view name)
{
    for (std::size_t i = 0; i < kEmotionCount; ++i)
        if (kEmotionNames[i] == name)
            return static_cast<Emotion>(i);
    return std::nullopt;
}

Lexicon::Lexicon(std::map<std::string, double> valence,
                 std::map<std::string, EmotionSet> emotions,
                 std::set<std::string> stopwords)
{
    for (auto& [word, v] : valence) {
        if (!std::isfinite(v) || v < -1.0 || v > 1.0)
            throw LexiconError("valence for '" + word + "' outside [-1, 1]");
        valence_.emplace(text::to_lower(word), v);
    }
    for (auto& [word, set] : emotions)
        emotions_[text::to_lower(word)] |= set;
    for (auto& word : stopwords)
        stopwords_.insert(text::to_lower(word));
}

std::optional<double> Lexicon::valence(const std::string& word) const
{
    auto it = valence_.find(word);
    if (it == valence_.end())
        return std::nullopt;
    return it->second;
}

EmotionSet Lexicon::emotions(const std::string& word) const
{
    auto it = emotions_.find(word);
    return it == emotions_.end() ? EmotionSet{} : it->second;
}

std::map<std::string, double> parse_valence_lexicon(std::string_view content)
{
    std::map<std::string, double> out;
    for (const auto& line : content_lines(content)) {
        auto [word, value] = split_tab(line, "valence lexicon");
        double v = 0;
        const char* first = value.data();
        if (!value.empty() && value.front() == '+')
            ++first;
        const auto [end, ec] = std::from_chars(first, value.data() + value.size(), v);
        if (ec != std::errc{} || end != value.data() + value.size())
            throw LexiconError("valence lexicon line " + std::to_string(line.number) + ": bad number '"
                               + std::string(value) + "'");
        if (!std::isfinite(v) || v < -1.0 || v > 1.0)
            throw LexiconError("valence lexicon line " + std::to_string(line.number) + ": valence outside [-1, 1]");
        out[word] = v;
    }
    return out;
}

std::map<std::string, EmotionSet> parse_emotion_lexicon(std::string_view content)
{
    std::map<std::string, EmotionSet> out;
    for (const auto& line : content_lines(content)) {
        auto [word, value] = split_tab(line, "emotion lexicon");
        const auto e = parse_emotion(text::to_lower(value));
        if (!e)
            throw LexiconError("emotion lexicon line " + std::to_string(line.number) + ": unknown emotion '"
                               + std::string(value) + "'");
        out[word].set(static_cast<std::size_t>(*e));
    }
    return out;
}

std::set<std::string> parse_stopwords(std::string_view content)
{
    std::set<std::string> out;
    for (const auto& line : content_lines(content))
        out.insert(text::to_lower(line.text));
    return out;
}

Lexicon load_lexicon(const std::filesystem::path& dir)
{
    if (!std::filesystem::is_directory(dir))
        throw LexiconError("lexicon directory not found: " + dir.string());
    auto load = [&](const char* name) {
        const auto p = dir / name;
        return std::filesystem::exists(p) ? read_file(p) : std::string();
    };
    return Lexicon(parse_valence_lexicon(load("valence.tsv")), parse_emotion_lexicon(load("emotions.tsv")),
                   parse_stopwords(load("stopwords.txt")));
}

} // namespace eduassist::feedback
