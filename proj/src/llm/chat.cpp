#include "intentrepair/llm/chat.hpp"

#include "intentrepair/error.hpp"
#include "intentrepair/util/text.hpp"

namespace intentrepair::llm {

std::string_view to_string(Role r) {
    switch (r) {
        case Role::System: return "system";
        case Role::User: return "user";
        case Role::Assistant: return "assistant";
    }
    return "user";
}

Role parse_role(std::string_view s) {
    if (s == "system") return Role::System;
    if (s == "user") return Role::User;
    if (s == "assistant") return Role::Assistant;
    throw Error(ErrorKind::Parse, "unknown chat role '" + std::string(s) + "'");
}

Conversation& Conversation::system(std::string content) {
    messages.push_back({Role::System, std::move(content)});
    return *this;
}

Conversation& Conversation::user(std::string content) {
    messages.push_back({Role::User, std::move(content)});
    return *this;
}

Conversation& Conversation::assistant(std::string content) {
    messages.push_back({Role::Assistant, std::move(content)});
    return *this;
}

std::string_view Conversation::last_user() const {
    for (auto it = messages.rbegin(); it != messages.rend(); ++it) {
        if (it->role == Role::User) return it->content;
    }
    return {};
}

void Conversation::validate() const {
    if (messages.empty()) throw Error(ErrorKind::InvalidInput, "conversation is empty");
    if (messages.front().role == Role::Assistant)
        throw Error(ErrorKind::InvalidInput, "conversation must start with a system or user message");
    std::size_t i = 0;
    while (i < messages.size() && messages[i].role == Role::System) ++i;
    Role expected = Role::User;
    for (; i < messages.size(); ++i) {
        if (messages[i].role != expected)
            throw Error(ErrorKind::InvalidInput, "message " + std::to_string(i) + " breaks user/assistant alternation");
        expected = expected == Role::User ? Role::Assistant : Role::User;
    }
    for (const auto& m : messages) {
        if (text::trim(m.content).empty()) throw Error(ErrorKind::InvalidInput, "message content must be non-empty");
    }
}

}  // namespace intentrepair::llm
