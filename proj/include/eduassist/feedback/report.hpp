#pragma once

#include "eduassist/feedback/analyzer.hpp"

#include <json.hpp>

#include <string>

namespace eduassist::feedback {

enum class ReportFormat { Json, Text };

// Rounds to one decimal place for display.
double round_percent(double pct);

// Canonical report document. Top-level keys: corpus_size,
// sentiment_distribution, score_histogram, length_histogram,
// wordcount_histogram, emotion_distribution, no_emotion_hits, keywords,
// summary. Percentages carry one decimal; raw counts travel alongside so the
// document converts back to an equal report.
nlohmann::json to_json(const AnalysisReport& report);

// Inverse of to_json. Throws nlohmann::json::exception or
// std::invalid_argument on malformed documents.
AnalysisReport report_from_json(const nlohmann::json& doc);

// json: sorted keys, two-space indent, trailing newline.
// text: one human-readable block per metric.
std::string render_report(const AnalysisReport& report, ReportFormat format);

} // namespace eduassist::feedback
