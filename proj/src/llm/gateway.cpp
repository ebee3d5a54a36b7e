#include "intentrepair/llm/gateway.hpp"

#include <thread>

#include "intentrepair/error.hpp"
#include "intentrepair/util/text.hpp"

namespace intentrepair::llm {

Gateway::Gateway(Backend& backend, RetryPolicy retry, std::optional<std::int64_t> token_budget,
                 TranscriptWriter* recorder)
    : backend_(backend), backend_name_(backend.name()), retry_(retry), budget_(token_budget), recorder_(recorder) {}

ChatResponse Gateway::complete(const Conversation& conversation, std::string_view agent) {
    conversation.validate();

    ChatResponse response;
    for (int attempt = 1;; ++attempt) {
        try {
            response = backend_.complete(conversation);
            break;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Transport) throw;
            if (attempt >= retry_.attempts)
                throw Error(ErrorKind::Gateway, "giving up after " + std::to_string(attempt) + " attempts: " + e.what());
            std::this_thread::sleep_for(retry_.base_delay * (1 << (attempt - 1)));
        }
    }
    response.message.role = Role::Assistant;

    TranscriptEntry entry;
    entry.request_digest = request_digest(conversation);
    entry.request = conversation;
    entry.response = response.message;
    entry.usage = response.usage;

    bool over_budget = false;
    {
        std::lock_guard lock(mutex_);
        entry.sequence_number = static_cast<std::int64_t>(entries_.size()) + 1;
        tokens_.per_agent[std::string(agent)] += response.usage;
        tokens_.total += response.usage;
        ++tokens_.calls;
        entries_.push_back(entry);
        over_budget = budget_ && tokens_.total.total() > *budget_;
    }
    if (recorder_ != nullptr) recorder_->append(entry);
    if (over_budget)
        throw Error(ErrorKind::BudgetExhausted,
                    "token budget of " + std::to_string(*budget_) + " exceeded after call " +
                        std::to_string(entry.sequence_number));
    return response;
}

AgentTokens Gateway::tokens() const {
    std::lock_guard lock(mutex_);
    return tokens_;
}

std::vector<TranscriptEntry> Gateway::entries() const {
    std::lock_guard lock(mutex_);
    return entries_;
}

nlohmann::json extract_structured(std::string_view response, std::string_view schema) {
    const auto lines = text::split_lines(response);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto line = text::trim(lines[i]);
        if (line.rfind("```", 0) != 0) continue;
        const auto info = text::trim(line.substr(3));
        const auto tag = info.substr(0, info.find(' '));
        if (tag != schema) continue;

        std::string body;
        std::size_t j = i + 1;
        for (; j < lines.size(); ++j) {
            if (text::trim(lines[j]) == "```") break;
            body += lines[j];
            body += '\n';
        }
        if (j == lines.size())
            throw ParseError("unterminated ```" + std::string(schema) + " block", std::string(response));
        try {
            return nlohmann::json::parse(body);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("```" + std::string(schema) + " block is not valid JSON: " + e.what(),
                             std::string(response));
        }
    }
    throw ParseError("no ```" + std::string(schema) + " block in response", std::string(response));
}

std::string format_instruction(std::string_view schema, std::string_view example) {
    std::string out = "\n\nOutput format: answer with exactly one fenced block tagged `";
    out += schema;
    out += "` containing JSON, for example:\n```";
    out += schema;
    out += "\n";
    out += example;
    out += "\n```\nText outside the block is ignored.";
    return out;
}

nlohmann::json complete_structured(Gateway& gateway, Conversation& conversation, std::string_view schema,
                                   std::string_view agent) {
    auto reply = gateway.complete(conversation, agent);
    conversation.assistant(reply.message.content);
    try {
        return extract_structured(reply.message.content, schema);
    } catch (const ParseError&) {
        conversation.user("Respond only in the required format: one fenced ```" + std::string(schema) +
                          " block containing valid JSON.");
        auto retry = gateway.complete(conversation, agent);
        conversation.assistant(retry.message.content);
        return extract_structured(retry.message.content, schema);
    }
}

}  // namespace intentrepair::llm
