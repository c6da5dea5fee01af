#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eduassist::chat {

using Timestamp = std::chrono::time_point<std::chrono::system_clock, std::chrono::milliseconds>;

Timestamp now_ms();

// "2024-05-01T09:30:00.250Z"
std::string format_timestamp(Timestamp t);
std::optional<Timestamp> parse_timestamp(std::string_view s);

enum class Role { User, Assistant };

std::string_view to_string(Role r);
std::optional<Role> parse_role(std::string_view s);

struct Turn {
    Role role = Role::User;
    std::string text;
    Timestamp at{};

    std::size_t words() const;

    friend bool operator==(const Turn&, const Turn&) = default;
};

inline constexpr std::size_t kDefaultWordBudget = 3000;

class Conversation {
public:
    Conversation() = default;
    explicit Conversation(std::string id, std::size_t word_budget = kDefaultWordBudget);

    // Builds a conversation from stored turns without checking alternation;
    // truncated histories may legitimately start with an assistant turn.
    static Conversation from_turns(std::string id, std::size_t word_budget, std::vector<Turn> turns);

    const std::string& id() const { return id_; }
    std::size_t word_budget() const { return word_budget_; }
    const std::vector<Turn>& turns() const { return turns_; }
    bool empty() const { return turns_.empty(); }

    std::size_t total_words() const;

    // Roles must alternate starting with the user; throws std::logic_error
    // otherwise.
    void append(Role role, std::string text, Timestamp at = now_ms());

    friend bool operator==(const Conversation&, const Conversation&) = default;

private:
    std::string id_;
    std::size_t word_budget_ = kDefaultWordBudget;
    std::vector<Turn> turns_;
};

// Drops the oldest whole turns until the retained words fit the budget.
// Turns are never split, and the most recent user turn (with everything
// after it) is always kept even when it alone exceeds the budget.
Conversation truncate_history(const Conversation& conv);

} // namespace eduassist::chat
