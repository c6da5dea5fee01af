#pragma once

#include "eduassist/feedback/corpus.hpp"
#include "eduassist/feedback/lexicon.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace eduassist::feedback {

enum class SentimentClass { Positive, Negative, Neutral };

inline constexpr std::array<SentimentClass, 3> kAllSentimentClasses = {
    SentimentClass::Positive, SentimentClass::Negative, SentimentClass::Neutral};

std::string_view to_string(SentimentClass c);

// Mean valence over tokens present in the lexicon, clamped to [-1, 1];
// 0 when no token matches.
double sentiment_score(const std::vector<std::string>& tokens, const Lexicon& lexicon);

// Strict thresholds: a score equal to either threshold is neutral.
SentimentClass classify_sentiment(double score, double positive_threshold = 0.05,
                                  double negative_threshold = -0.05);

// Counts per bin. Bin i covers [edges[i], edges[i+1]). With open_ended the
// last bin is [edges.back(), inf) and counts.size() == edges.size();
// otherwise the final bin is closed on the right and
// counts.size() == edges.size() - 1.
struct Histogram {
    std::vector<double> edges;
    bool open_ended = false;
    std::vector<std::size_t> counts;

    static Histogram closed(std::vector<double> edges);
    static Histogram open(std::vector<double> lower_edges);

    // Bin index for x, or npos when x is outside the covered range.
    std::size_t bin_of(double x) const;
    void add(double x);
    std::size_t total() const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    friend bool operator==(const Histogram&, const Histogram&) = default;
};

struct AnalyzerConfig {
    double positive_threshold = 0.05;
    double negative_threshold = -0.05;
    std::vector<double> score_edges = {-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<double> length_edges = {0, 50, 100, 200, 400};
    std::vector<double> wordcount_edges = {0, 10, 20, 40, 80};
    std::size_t top_keywords = 20;
    std::size_t min_keyword_length = 2; // code points
    std::size_t summary_sentences = 3;

    // Throws std::invalid_argument on unsorted edges or crossed thresholds.
    void check() const;
};

struct KeywordCount {
    std::string term;
    std::size_t count = 0;

    friend bool operator==(const KeywordCount&, const KeywordCount&) = default;
};

struct AnalysisReport {
    std::size_t corpus_size = 0;
    std::array<std::size_t, 3> sentiment_counts{}; // indexed by SentimentClass
    Histogram score_histogram;
    Histogram length_histogram;    // characters (code points)
    Histogram wordcount_histogram; // tokens
    std::array<std::size_t, kEmotionCount> emotion_hits{}; // indexed by Emotion
    std::vector<KeywordCount> keywords;
    std::vector<std::string> summary;

    bool no_emotion_hits() const;

    // Exact ratios, not rounded. Sum to 100 (emotions: or all zero).
    std::array<double, 3> sentiment_percentages() const;
    std::array<double, kEmotionCount> emotion_percentages() const;

    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

// Sentences end at '.', '!' or '?' followed by whitespace or end of text;
// the end of the text also closes a trailing sentence. Returned views are
// trimmed and point into `text`.
std::vector<std::string_view> split_sentences(std::string_view text);

// Corpus-wide token counts, excluding stopwords and short tokens, ordered by
// (count desc, term asc) and cut to `limit`.
std::vector<KeywordCount> top_keywords(const std::vector<Comment>& comments, const Lexicon& lexicon,
                                       std::size_t limit, std::size_t min_length = 2);

// Throws EmptyCorpus when `comments` is empty.
AnalysisReport analyze(const std::vector<Comment>& comments, const Lexicon& lexicon,
                       const AnalyzerConfig& config = {});

} // namespace eduassist::feedback
