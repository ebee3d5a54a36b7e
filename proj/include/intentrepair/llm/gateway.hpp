#pragma once

#include <chrono>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "intentrepair/core/session.hpp"
#include "intentrepair/llm/chat.hpp"
#include "intentrepair/llm/transcript.hpp"

namespace intentrepair::llm {

struct RetryPolicy {
    int attempts = 3;
    std::chrono::milliseconds base_delay{500};
};

/// Single entry point for every LLM call in a session: retries transport
/// failures, accounts tokens per agent, enforces the budget cap and keeps the
/// transcript of the session (optionally mirrored to a file).
class Gateway {
public:
    Gateway(Backend& backend, RetryPolicy retry = {}, std::optional<std::int64_t> token_budget = std::nullopt,
            TranscriptWriter* recorder = nullptr);

    /// Sends the conversation and returns the assistant reply. The reply is
    /// not appended; callers own their conversations. Throws BudgetExhausted
    /// after recording a call that pushed the total over the cap.
    ChatResponse complete(const Conversation& conversation, std::string_view agent);

    AgentTokens tokens() const;
    std::vector<TranscriptEntry> entries() const;
    const std::string& backend_name() const { return backend_name_; }

private:
    Backend& backend_;
    std::string backend_name_;
    RetryPolicy retry_;
    std::optional<std::int64_t> budget_;
    TranscriptWriter* recorder_;

    mutable std::mutex mutex_;
    AgentTokens tokens_;
    std::vector<TranscriptEntry> entries_;
};

/// Parses the first fenced block whose info string starts with `schema`
/// (```intent ... ```) as JSON. Prose around the block is ignored. Throws
/// ParseError carrying the raw text when no such block exists or the block is
/// not valid JSON.
nlohmann::json extract_structured(std::string_view response, std::string_view schema);

/// The output-format contract appended to every agent prompt.
std::string format_instruction(std::string_view schema, std::string_view example);

/// Sends `conversation`, extracts a `schema` block and appends the exchange to
/// the conversation. On a parse failure the model is nudged once to answer in
/// the required format; a second failure rethrows the ParseError.
nlohmann::json complete_structured(Gateway& gateway, Conversation& conversation, std::string_view schema,
                                   std::string_view agent);

}  // namespace intentrepair::llm
