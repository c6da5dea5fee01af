#include "eduassist/chat/prompt_index.hpp"

#include "eduassist/text.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace eduassist::chat {

namespace {

SparseVector normalized(std::map<std::size_t, double> weights)
{
    SparseVector v;
    double sq = 0.0;
    for (const auto& [dim, w] : weights) {
        if (w == 0.0)
            continue;
        v.emplace_back(dim, w);
        sq += w * w;
    }
    if (v.empty())
        return v;
    const double n = std::sqrt(sq);
    for (auto& [dim, w] : v)
        w /= n;
    return v;
}

} // namespace

double dot(const SparseVector& a, const SparseVector& b)
{
    double s = 0.0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (i->first < j->first) {
            ++i;
        } else if (j->first < i->first) {
            ++j;
        } else {
            s += i->second * j->second;
            ++i;
            ++j;
        }
    }
    return s;
}

double norm(const SparseVector& v)
{
    return std::sqrt(dot(v, v));
}

double cosine(const SparseVector& a, const SparseVector& b)
{
    const double na = norm(a);
    const double nb = norm(b);
    if (na == 0.0 || nb == 0.0)
        return 0.0;
    return dot(a, b) / (na * nb);
}

PromptIndex::PromptIndex(std::vector<FinetunePair> pairs)
    : pairs_(std::move(pairs))
{
    if (pairs_.empty())
        throw std::invalid_argument("prompt index needs at least one pair");

    std::vector<std::vector<std::string>> tokens;
    tokens.reserve(pairs_.size());
    std::map<std::string, std::size_t> df;
    for (const auto& p : pairs_) {
        tokens.push_back(text::tokenize(p.prompt));
        for (const auto& t : std::set<std::string>(tokens.back().begin(), tokens.back().end()))
            ++df[t];
    }

    const double n = static_cast<double>(pairs_.size());
    for (const auto& [term, count] : df) {
        vocabulary_.emplace(term, idf_.size());
        idf_.push_back(std::log(n / static_cast<double>(count)));
    }

    vectors_.reserve(pairs_.size());
    for (const auto& toks : tokens) {
        std::map<std::size_t, double> tf;
        for (const auto& t : toks)
            tf[vocabulary_.at(t)] += 1.0;
        for (auto& [dim, w] : tf)
            w *= idf_[dim];
        vectors_.push_back(normalized(std::move(tf)));
    }
}

SparseVector PromptIndex::vectorize(std::string_view text) const
{
    std::map<std::size_t, double> tf;
    for (const auto& t : text::tokenize(text)) {
        auto it = vocabulary_.find(t);
        if (it != vocabulary_.end())
            tf[it->second] += 1.0;
    }
    for (auto& [dim, w] : tf)
        w *= idf_[dim];
    return normalized(std::move(tf));
}

Completion mock_complete(const PromptIndex& index, std::string_view question, double threshold)
{
    if (text::trim(question).empty())
        throw std::invalid_argument("question is empty");

    const auto q = index.vectorize(question);
    const Completion fallback{std::string(kFallbackAnswer), 0.0, std::nullopt};
    if (q.empty())
        return fallback;

    const FinetunePair* best = nullptr;
    double best_sim = 0.0;
    const auto& pairs = index.pairs();
    const auto& vectors = index.vectors();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (vectors[i].empty())
            continue;
        const double sim = dot(q, vectors[i]);
        if (!best || sim > best_sim || (sim == best_sim && pairs[i].line_no < best->line_no)) {
            best = &pairs[i];
            best_sim = sim;
        }
    }
    if (!best || best_sim < threshold)
        return {fallback.text, best ? best_sim : 0.0, std::nullopt};
    return {best->completion, best_sim, best->line_no};
}

} // namespace eduassist::chat
