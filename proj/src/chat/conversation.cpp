#include "eduassist/chat/conversation.hpp"

#include "eduassist/text.hpp"

#include <cstdio>
#include <ctime>
#include <stdexcept>

namespace eduassist::chat {

Timestamp now_ms()
{
    return std::chrono::time_point_cast<std::chrono::milliseconds>(std::chrono::system_clock::now());
}

std::string format_timestamp(Timestamp t)
{
    const auto ms = t.time_since_epoch().count();
    auto secs = static_cast<std::time_t>(ms / 1000);
    auto frac = ms % 1000;
    if (frac < 0) {
        frac += 1000;
        --secs;
    }
    std::tm tm{};
    gmtime_r(&secs, &tm);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1,
                  tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, static_cast<int>(frac));
    return buf;
}

std::optional<Timestamp> parse_timestamp(std::string_view s)
{
    std::tm tm{};
    int ms = 0;
    int consumed = 0;
    const std::string str(s);
    if (std::sscanf(str.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d.%3dZ%n", &tm.tm_year, &tm.tm_mon, &tm.tm_mday,
                    &tm.tm_hour, &tm.tm_min, &tm.tm_sec, &ms, &consumed) != 7
        || static_cast<std::size_t>(consumed) != str.size())
        return std::nullopt;
    tm.tm_year -= 1900;
    tm.tm_mon -= 1;
    const std::time_t secs = timegm(&tm);
    return Timestamp(std::chrono::milliseconds(static_cast<std::int64_t>(secs) * 1000 + ms));
}

std::string_view to_string(Role r)
{
    return r == Role::User ? "user" : "assistant";
}

std::optional<Role> parse_role(std::string_view s)
{
    if (s == "user")
        return Role::User;
    if (s == "assistant")
        return Role::Assistant;
    return std::nullopt;
}

std::size_t Turn::words() const
{
    return text::word_count(text);
}

Conversation::Conversation(std::string id, std::size_t word_budget)
    : id_(std::move(id)), word_budget_(word_budget)
{
    if (word_budget_ == 0)
        throw std::invalid_argument("word budget must be positive");
}

Conversation Conversation::from_turns(std::string id, std::size_t word_budget, std::vector<Turn> turns)
{
    Conversation c(std::move(id), word_budget);
    c.turns_ = std::move(turns);
    return c;
}

std::size_t Conversation::total_words() const
{
    std::size_t n = 0;
    for (const auto& t : turns_)
        n += t.words();
    return n;
}

void Conversation::append(Role role, std::string text, Timestamp at)
{
    const Role expected = (turns_.empty() || turns_.back().role == Role::Assistant) ? Role::User : Role::Assistant;
    if (role != expected)
        throw std::logic_error("conversation turns must alternate starting with the user");
    turns_.push_back({role, std::move(text), at});
}

Conversation truncate_history(const Conversation& conv)
{
    const auto& turns = conv.turns();
    const std::size_t n = turns.size();

    // Longest suffix that fits the budget.
    std::size_t keep_from = n;
    std::size_t words = 0;
    while (keep_from > 0) {
        const auto w = turns[keep_from - 1].words();
        if (words + w > conv.word_budget())
            break;
        words += w;
        --keep_from;
    }

    // Widen to include the latest user turn.
    for (std::size_t i = n; i > 0; --i) {
        if (turns[i - 1].role == Role::User) {
            keep_from = std::min(keep_from, i - 1);
            break;
        }
    }

    return Conversation::from_turns(conv.id(), conv.word_budget(),
                                    std::vector<Turn>(turns.begin() + static_cast<std::ptrdiff_t>(keep_from), turns.end()));
}

} // namespace eduassist::chat
