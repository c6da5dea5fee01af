#pragma once

#include <array>
#include <bitset>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace eduassist::feedback {

// Plutchik's eight basic emotions, in alphabetical order.
enum class Emotion { Anger, Anticipation, Disgust, Fear, Joy, Sadness, Surprise, Trust };

inline constexpr std::size_t kEmotionCount = 8;

inline constexpr std::array<Emotion, kEmotionCount> kAllEmotions = {
    Emotion::Anger, Emotion::Anticipation, Emotion::Disgust, Emotion::Fear,
    Emotion::Joy,   Emotion::Sadness,      Emotion::Surprise, Emotion::Trust};

std::string_view to_string(Emotion e);
std::optional<Emotion> parse_emotion(std::string_view name);

using EmotionSet = std::bitset<kEmotionCount>;

class LexiconError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Immutable word -> valence / emotion maps plus a stopword set. All keys are
// stored lowercase; valences lie in [-1, +1].
class Lexicon {
public:
    Lexicon() = default;
    Lexicon(std::map<std::string, double> valence,
            std::map<std::string, EmotionSet> emotions,
            std::set<std::string> stopwords);

    std::optional<double> valence(const std::string& word) const;
    EmotionSet emotions(const std::string& word) const;
    bool is_stopword(const std::string& word) const { return stopwords_.count(word) > 0; }

    const std::map<std::string, double>& valence_map() const { return valence_; }
    const std::map<std::string, EmotionSet>& emotion_map() const { return emotions_; }
    const std::set<std::string>& stopwords() const { return stopwords_; }

private:
    std::map<std::string, double> valence_;
    std::map<std::string, EmotionSet> emotions_;
    std::set<std::string> stopwords_;
};

// `word<TAB>valence` lines; '#' comments and blank lines ignored.
std::map<std::string, double> parse_valence_lexicon(std::string_view content);

// `word<TAB>emotion` lines; a word may repeat to accumulate emotions.
std::map<std::string, EmotionSet> parse_emotion_lexicon(std::string_view content);

// One word per line.
std::set<std::string> parse_stopwords(std::string_view content);

// Loads valence.tsv, emotions.tsv and stopwords.txt from `dir`. Missing
// files leave the corresponding map empty.
Lexicon load_lexicon(const std::filesystem::path& dir);

} // namespace eduassist::feedback
