#pragma once

#include "eduassist/chat/dataset.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace eduassist::chat {

// (dimension, weight) entries with strictly increasing dimension.
using SparseVector = std::vector<std::pair<std::size_t, double>>;

double dot(const SparseVector& a, const SparseVector& b);
double norm(const SparseVector& v);

// dot(a, b) / (|a| |b|); 0 when either side is the zero vector.
double cosine(const SparseVector& a, const SparseVector& b);

// TF-IDF index over the prompts of a fine-tune dataset. tf is the raw term
// count, idf = ln(N / df), and each prompt vector is L2-normalised (or zero
// when none of its terms carries weight). Immutable once built.
class PromptIndex {
public:
    // Throws std::invalid_argument on an empty pair list.
    explicit PromptIndex(std::vector<FinetunePair> pairs);

    const std::map<std::string, std::size_t>& vocabulary() const { return vocabulary_; }
    const std::vector<double>& idf() const { return idf_; }
    const std::vector<SparseVector>& vectors() const { return vectors_; }
    const std::vector<FinetunePair>& pairs() const { return pairs_; }

    // Normalised TF-IDF vector of arbitrary text over this vocabulary;
    // unknown terms are ignored.
    SparseVector vectorize(std::string_view text) const;

private:
    std::vector<FinetunePair> pairs_;
    std::map<std::string, std::size_t> vocabulary_;
    std::vector<double> idf_;
    std::vector<SparseVector> vectors_;
};

inline constexpr double kDefaultSimilarityThreshold = 0.1;
inline constexpr std::string_view kFallbackAnswer = "I don't have course material matching that question.";

struct Completion {
    std::string text;
    double similarity = 0.0;              // mock only
    std::optional<std::size_t> source_line; // mock only: line_no of the matched pair

    friend bool operator==(const Completion&, const Completion&) = default;
};

// Returns the completion of the prompt most cosine-similar to `question`,
// ties going to the lowest line_no. Zero prompt vectors never match. Falls
// back to kFallbackAnswer when the question vector is zero or the best
// similarity is below `threshold`. Throws std::invalid_argument on a blank
// question.
Completion mock_complete(const PromptIndex& index, std::string_view question,
                         double threshold = kDefaultSimilarityThreshold);

} // namespace eduassist::chat
