#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "intentrepair/core/model.hpp"

namespace intentrepair::llm {

enum class Role { System, User, Assistant };

std::string_view to_string(Role r);
Role parse_role(std::string_view s);

struct ChatMessage {
    Role role = Role::User;
    std::string content;

    bool operator==(const ChatMessage&) const = default;
};

/// Ordered message list plus sampling parameters. Valid conversations start
/// with a system or user message and alternate user/assistant afterwards.
struct Conversation {
    std::vector<ChatMessage> messages;
    LlmParams params;

    Conversation& system(std::string content);
    Conversation& user(std::string content);
    Conversation& assistant(std::string content);

    /// Content of the final user message, or empty.
    std::string_view last_user() const;

    void validate() const;

    bool operator==(const Conversation&) const = default;
};

struct ChatResponse {
    ChatMessage message;
    TokenUsage usage;
};

/// A chat-completion backend: live HTTP, recorded replay or scripted mock.
class Backend {
public:
    virtual ~Backend() = default;
    virtual ChatResponse complete(const Conversation& conversation) = 0;
    virtual std::string name() const = 0;
};

}  // namespace intentrepair::llm
