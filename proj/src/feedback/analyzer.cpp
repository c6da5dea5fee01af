#include "eduassist/feedback/analyzer.hpp"

#include "eduassist/text.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace eduassist::feedback {

std::string_view to_string(SentimentClass c)
{
    switch (c) {
    case SentimentClass::Positive: return "positive";
    case SentimentClass::Negative: return "negative";
    case SentimentClass::Neutral: return "neutral";
    }
    return "?";
}

double sentiment_score(const std::vector<std::string>& tokens, const Lexicon& lexicon)
{
    double sum = 0.0;
    std::size_t matched = 0;
    for (const auto& t : tokens) {
        if (auto v = lexicon.valence(t)) {
            sum += *v;
            ++matched;
        }
    }
    if (matched == 0)
        return 0.0;
    return std::clamp(sum / static_cast<double>(matched), -1.0, 1.0);
}

SentimentClass classify_sentiment(double score, double positive_threshold, double negative_threshold)
{
    if (score > positive_threshold)
        return SentimentClass::Positive;
    if (score < negative_threshold)
        return SentimentClass::Negative;
    return SentimentClass::Neutral;
}

Histogram Histogram::closed(std::vector<double> edges)
{
    Histogram h;
    h.counts.assign(edges.size() > 1 ? edges.size() - 1 : 0, 0);
    h.edges = std::move(edges);
    return h;
}

Histogram Histogram::open(std::vector<double> lower_edges)
{
    Histogram h;
    h.open_ended = true;
    h.counts.assign(lower_edges.size(), 0);
    h.edges = std::move(lower_edges);
    return h;
}

std::size_t Histogram::bin_of(double x) const
{
    if (counts.empty() || x < edges.front())
        return npos;
    // First edge strictly greater than x; the bin starts one before it.
    const auto it = std::upper_bound(edges.begin(), edges.end(), x);
    const auto i = static_cast<std::size_t>(it - edges.begin()) - 1;
    if (open_ended)
        return i;
    if (i < counts.size())
        return i;
    return x == edges.back() ? counts.size() - 1 : npos;
}

void Histogram::add(double x)
{
    const auto i = bin_of(x);
    if (i == npos)
        throw std::out_of_range("histogram value outside bin range");
    ++counts[i];
}

std::size_t Histogram::total() const
{
    return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

void AnalyzerConfig::check() const
{
    if (!(negative_threshold < positive_threshold))
        throw std::invalid_argument("negative threshold must be below positive threshold");
    auto sorted = [](const std::vector<double>& e) {
        return std::adjacent_find(e.begin(), e.end(), std::greater_equal<>()) == e.end();
    };
    if (score_edges.size() < 2 || !sorted(score_edges) || score_edges.front() > -1.0 || score_edges.back() < 1.0)
        throw std::invalid_argument("score bin edges must increase and cover [-1, 1]");
    for (const auto* e : {&length_edges, &wordcount_edges})
        if (e->empty() || !sorted(*e) || e->front() > 0)
            throw std::invalid_argument("length/word-count bin edges must increase from 0");
}

bool AnalysisReport::no_emotion_hits() const
{
    return std::all_of(emotion_hits.begin(), emotion_hits.end(), [](std::size_t n) { return n == 0; });
}

std::array<double, 3> AnalysisReport::sentiment_percentages() const
{
    std::array<double, 3> out{};
    if (corpus_size == 0)
        return out;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<double>(sentiment_counts[i]) * 100.0 / static_cast<double>(corpus_size);
    return out;
}

std::array<double, kEmotionCount> AnalysisReport::emotion_percentages() const
{
    std::array<double, kEmotionCount> out{};
    const auto total = std::accumulate(emotion_hits.begin(), emotion_hits.end(), std::size_t{0});
    if (total == 0)
        return out;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<double>(emotion_hits[i]) * 100.0 / static_cast<double>(total);
    return out;
}

std::vector<std::string_view> split_sentences(std::string_view text)
{
    std::vector<std::string_view> out;
    auto emit = [&](std::size_t begin, std::size_t end) {
        auto s = text::trim(text.substr(begin, end - begin));
        if (!s.empty())
            out.push_back(s);
    };
    auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };

    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if ((c == '.' || c == '!' || c == '?') && (i + 1 == text.size() || is_ws(text[i + 1]))) {
            emit(start, i + 1);
            start = i + 1;
        }
    }
    emit(start, text.size());
    return out;
}

std::vector<KeywordCount> top_keywords(const std::vector<Comment>& comments, const Lexicon& lexicon,
                                       std::size_t limit, std::size_t min_length)
{
    std::map<std::string, std::size_t> counts;
    for (const auto& c : comments)
        for (auto& t : text::tokenize(c.text))
            if (text::codepoint_count(t) >= min_length && !lexicon.is_stopword(t))
                ++counts[t];

    std::vector<KeywordCount> ranked;
    ranked.reserve(counts.size());
    for (auto& [term, n] : counts)
        ranked.push_back({term, n});
    // `counts` is term-ordered, so a stable sort on count alone keeps terms ascending.
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const KeywordCount& a, const KeywordCount& b) { return a.count > b.count; });
    if (ranked.size() > limit)
        ranked.resize(limit);
    return ranked;
}

AnalysisReport analyze(const std::vector<Comment>& comments, const Lexicon& lexicon, const AnalyzerConfig& config)
{
    if (comments.empty())
        throw EmptyCorpus();
    config.check();

    AnalysisReport r;
    r.corpus_size = comments.size();
    r.score_histogram = Histogram::closed(config.score_edges);
    r.length_histogram = Histogram::open(config.length_edges);
    r.wordcount_histogram = Histogram::open(config.wordcount_edges);

    for (const auto& c : comments) {
        const auto tokens = text::tokenize(c.text);
        const double score = sentiment_score(tokens, lexicon);
        ++r.sentiment_counts[static_cast<std::size_t>(
            classify_sentiment(score, config.positive_threshold, config.negative_threshold))];
        r.score_histogram.add(score);
        r.length_histogram.add(static_cast<double>(text::codepoint_count(c.text)));
        r.wordcount_histogram.add(static_cast<double>(tokens.size()));

        for (const auto& t : tokens) {
            const auto set = lexicon.emotions(t);
            for (std::size_t e = 0; e < kEmotionCount; ++e)
                r.emotion_hits[e] += set.test(e) ? 1 : 0;
        }
    }

    r.keywords = top_keywords(comments, lexicon, config.top_keywords, config.min_keyword_length);

    std::map<std::string, std::size_t> weight;
    for (const auto& k : r.keywords)
        weight.emplace(k.term, k.count);

    struct Scored {
        std::string_view sentence;
        std::size_t score;
        std::size_t order;
    };
    std::vector<Scored> sentences;
    for (const auto& c : comments) {
        for (auto s : split_sentences(c.text)) {
            std::size_t score = 0;
            for (const auto& t : text::tokenize(s)) {
                auto it = weight.find(t);
                if (it != weight.end())
                    score += it->second;
            }
            sentences.push_back({s, score, sentences.size()});
        }
    }
    std::stable_sort(sentences.begin(), sentences.end(),
                     [](const Scored& a, const Scored& b) { return a.score > b.score; });
    if (sentences.size() > config.summary_sentences)
        sentences.resize(config.summary_sentences);
    std::sort(sentences.begin(), sentences.end(), [](const Scored& a, const Scored& b) { return a.order < b.order; });
    for (const auto& s : sentences)
        r.summary.emplace_back(s.sentence);

    return r;
}

} // namespace eduassist::feedback
