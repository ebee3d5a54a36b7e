#pragma once

#include <deque>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "intentrepair/llm/chat.hpp"
#include "intentrepair/llm/transcript.hpp"

namespace intentrepair::llm {

/// One scripted reply. A rule fires when every `match` string occurs in the
/// last user message and every `context` string occurs somewhere in the
/// conversation. Rules are tried in declaration order.
struct MockRule {
    std::vector<std::string> match;
    std::vector<std::string> context;
    std::string response;
    TokenUsage usage;
    int times = 1;  // 0 = unlimited
};

class MockBackend : public Backend {
public:
    MockBackend() = default;
    explicit MockBackend(std::vector<MockRule> rules) : rules_(std::move(rules)) {}

    /// Reads the text script format:
    ///
    ///     === rule
    ///     match: Locate the top-3
    ///     context: count_upper
    ///     times: 2
    ///     usage: 812 140
    ///     ---
    ///     response body, verbatim, up to the next "=== rule"
    static std::vector<MockRule> load_script(const std::string& path);
    static std::vector<MockRule> parse_script(const std::string& script);

    MockBackend& add(MockRule rule);
    /// Shorthand for an unconditional reply served `times` times.
    MockBackend& reply(std::string response, int times = 1, TokenUsage usage = {});

    ChatResponse complete(const Conversation& conversation) override;
    std::string name() const override { return "mock"; }

    std::size_t calls() const { return calls_; }

private:
    std::vector<MockRule> rules_;
    std::vector<int> used_;
    std::size_t calls_ = 0;
    std::mutex mutex_;
};

/// Serves recorded responses by request digest. Duplicate requests are
/// served in sequence-number order.
class ReplayBackend : public Backend {
public:
    explicit ReplayBackend(const std::vector<TranscriptEntry>& entries);

    ChatResponse complete(const Conversation& conversation) override;
    std::string name() const override { return "replay"; }

    std::size_t remaining() const;

private:
    std::map<std::string, std::deque<TranscriptEntry>> by_digest_;
    mutable std::mutex mutex_;
};

struct LiveConfig {
    std::string endpoint = "https://api.openai.com/v1/chat/completions";
    std::string api_key_env = "OPENAI_API_KEY";
    int timeout_seconds = 120;
};

/// OpenAI-compatible chat-completions over HTTP(S). Connection failures,
/// 429 and 5xx raise transport errors (retryable); other statuses raise
/// gateway errors.
class LiveBackend : public Backend {
public:
    explicit LiveBackend(LiveConfig config);

    ChatResponse complete(const Conversation& conversation) override;
    std::string name() const override { return "live"; }

    /// Request body sent for a conversation.
    static std::string request_body(const Conversation& conversation);
    /// Parses a chat-completions response body.
    static ChatResponse parse_response(const std::string& body);

private:
    LiveConfig config_;
    std::string api_key_;
};

}  // namespace intentrepair::llm
