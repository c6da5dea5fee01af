#include "eduassist/feedback/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace eduassist::feedback {

using nlohmann::json;

namespace {

json histogram_json(const Histogram& h)
{
    return {{"edges", h.edges}, {"open_ended", h.open_ended}, {"counts", h.counts}};
}

Histogram histogram_from(const json& j)
{
    Histogram h;
    h.edges = j.at("edges").get<std::vector<double>>();
    h.open_ended = j.at("open_ended").get<bool>();
    h.counts = j.at("counts").get<std::vector<std::size_t>>();
    const auto expected = h.open_ended ? h.edges.size() : (h.edges.empty() ? 0 : h.edges.size() - 1);
    if (h.counts.size() != expected)
        throw std::invalid_argument("histogram counts do not match edges");
    return h;
}

std::string format_pct(double pct)
{
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(1) << round_percent(pct) << "%";
    return ss.str();
}

std::string format_edge(double v)
{
    std::ostringstream ss;
    ss << v;
    return ss.str();
}

void text_histogram(std::ostringstream& out, const char* title, const Histogram& h)
{
    out << title << "\n";
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        std::string label;
        if (h.open_ended && i + 1 == h.counts.size())
            label = "[" + format_edge(h.edges[i]) + ", inf)";
        else if (!h.open_ended && i + 1 == h.counts.size())
            label = "[" + format_edge(h.edges[i]) + ", " + format_edge(h.edges[i + 1]) + "]";
        else
            label = "[" + format_edge(h.edges[i]) + ", " + format_edge(h.edges[i + 1]) + ")";
        out << "  " << std::left << std::setw(16) << label << std::right << std::setw(8) << h.counts[i] << "\n";
    }
    out << "\n";
}

} // namespace

double round_percent(double pct)
{
    return std::round(pct * 10.0) / 10.0;
}

json to_json(const AnalysisReport& r)
{
    json sentiment_pct = json::object();
    json sentiment_counts = json::object();
    const auto sp = r.sentiment_percentages();
    for (auto c : kAllSentimentClasses) {
        const auto i = static_cast<std::size_t>(c);
        sentiment_pct[std::string(to_string(c))] = round_percent(sp[i]);
        sentiment_counts[std::string(to_string(c))] = r.sentiment_counts[i];
    }

    json emotion_pct = json::object();
    json emotion_hits = json::object();
    const auto ep = r.emotion_percentages();
    for (auto e : kAllEmotions) {
        const auto i = static_cast<std::size_t>(e);
        emotion_pct[std::string(to_string(e))] = round_percent(ep[i]);
        emotion_hits[std::string(to_string(e))] = r.emotion_hits[i];
    }

    json keywords = json::array();
    for (const auto& k : r.keywords)
        keywords.push_back({{"term", k.term}, {"count", k.count}});

    return {
        {"corpus_size", r.corpus_size},
        {"sentiment_distribution", {{"percent", sentiment_pct}, {"counts", sentiment_counts}}},
        {"score_histogram", histogram_json(r.score_histogram)},
        {"length_histogram", histogram_json(r.length_histogram)},
        {"wordcount_histogram", histogram_json(r.wordcount_histogram)},
        {"emotion_distribution", {{"percent", emotion_pct}, {"hits", emotion_hits}}},
        {"no_emotion_hits", r.no_emotion_hits()},
        {"keywords", keywords},
        {"summary", r.summary},
    };
}

AnalysisReport report_from_json(const json& doc)
{
    AnalysisReport r;
    r.corpus_size = doc.at("corpus_size").get<std::size_t>();
    const auto& sc = doc.at("sentiment_distribution").at("counts");
    for (auto c : kAllSentimentClasses)
        r.sentiment_counts[static_cast<std::size_t>(c)] = sc.at(std::string(to_string(c))).get<std::size_t>();
    r.score_histogram = histogram_from(doc.at("score_histogram"));
    r.length_histogram = histogram_from(doc.at("length_histogram"));
    r.wordcount_histogram = histogram_from(doc.at("wordcount_histogram"));
    const auto& eh = doc.at("emotion_distribution").at("hits");
    for (auto e : kAllEmotions)
        r.emotion_hits[static_cast<std::size_t>(e)] = eh.at(std::string(to_string(e))).get<std::size_t>();
    for (const auto& k : doc.at("keywords"))
        r.keywords.push_back({k.at("term").get<std::string>(), k.at("count").get<std::size_t>()});
    r.summary = doc.at("summary").get<std::vector<std::string>>();
    if (doc.at("no_emotion_hits").get<bool>() != r.no_emotion_hits())
        throw std::invalid_argument("no_emotion_hits disagrees with emotion hit counts");
    return r;
}

std::string render_report(const AnalysisReport& r, ReportFormat format)
{
    if (format == ReportFormat::Json)
        return to_json(r).dump(2) + "\n";

    std::ostringstream out;
    out << "Comments analysed: " << r.corpus_size << "\n\n";

    out << "Sentiment distribution\n";
    const auto sp = r.sentiment_percentages();
    for (auto c : kAllSentimentClasses) {
        const auto i = static_cast<std::size_t>(c);
        out << "  " << std::left << std::setw(10) << to_string(c) << std::right << std::setw(8)
            << format_pct(sp[i]) << "  (" << r.sentiment_counts[i] << ")\n";
    }
    out << "\n";

    text_histogram(out, "Sentiment score distribution", r.score_histogram);
    text_histogram(out, "Comment length distribution (characters)", r.length_histogram);
    text_histogram(out, "Comment word count distribution", r.wordcount_histogram);

    out << "Emotion distribution\n";
    if (r.no_emotion_hits()) {
        out << "  no emotion words found\n";
    } else {
        const auto ep = r.emotion_percentages();
        for (auto e : kAllEmotions) {
            const auto i = static_cast<std::size_t>(e);
            out << "  " << std::left << std::setw(14) << to_string(e) << std::right << std::setw(8)
                << format_pct(ep[i]) << "  (" << r.emotion_hits[i] << ")\n";
        }
    }
    out << "\n";

    out << "Top keywords\n";
    for (std::size_t i = 0; i < r.keywords.size(); ++i)
        out << "  " << std::setw(2) << i + 1 << ". " << r.keywords[i].term << " (" << r.keywords[i].count << ")\n";
    out << "\n";

    out << "Summary\n";
    for (const auto& s : r.summary)
        out << "  - " << s << "\n";
    return out.str();
}

} // namespace eduassist::feedback
