#include <algorithm>

#include "intentrepair/error.hpp"
#include "intentrepair/llm/backends.hpp"
#include "intentrepair/util/text.hpp"

namespace intentrepair::llm {

namespace {

bool rule_matches(const MockRule& rule, const Conversation& c) {
    const auto last = c.last_user();
    for (const auto& m : rule.match) {
        if (!text::contains(last, m)) return false;
    }
    for (const auto& ctx : rule.context) {
        const bool found = std::any_of(c.messages.begin(), c.messages.end(),
                                       [&](const ChatMessage& msg) { return text::contains(msg.content, ctx); });
        if (!found) return false;
    }
    return true;
}

}  // namespace

std::vector<MockRule> MockBackend::load_script(const std::string& path) { return parse_script(text::read_file(path)); }

std::vector<MockRule> MockBackend::parse_script(const std::string& script) {
    std::vector<MockRule> rules;
    const auto lines = text::split_lines(script);
    std::size_t i = 0;
    while (i < lines.size() && text::trim(lines[i]) != "=== rule") ++i;
    while (i < lines.size()) {
        ++i;  // past "=== rule"
        MockRule rule;
        for (; i < lines.size() && text::trim(lines[i]) != "---"; ++i) {
            const auto line = text::trim(lines[i]);
            if (line.empty() || line[0] == '#') continue;
            const auto colon = line.find(':');
            if (colon == std::string::npos)
                throw Error(ErrorKind::Parse, "mock script: expected 'key: value', got '" + line + "'");
            const auto key = text::trim(line.substr(0, colon));
            const auto value = text::trim(line.substr(colon + 1));
            if (key == "match") {
                rule.match.push_back(value);
            } else if (key == "context") {
                rule.context.push_back(value);
            } else if (key == "times") {
                rule.times = std::stoi(value);
            } else if (key == "usage") {
                const auto sp = value.find(' ');
                if (sp == std::string::npos) throw Error(ErrorKind::Parse, "mock script: usage needs two numbers");
                rule.usage.prompt_tokens = std::stoll(value.substr(0, sp));
                rule.usage.completion_tokens = std::stoll(text::trim(value.substr(sp)));
            } else {
                throw Error(ErrorKind::Parse, "mock script: unknown key '" + key + "'");
            }
        }
        if (i >= lines.size()) throw Error(ErrorKind::Parse, "mock script: rule without '---' body separator");
        ++i;  // past "---"
        std::vector<std::string> body;
        for (; i < lines.size() && text::trim(lines[i]) != "=== rule"; ++i) body.push_back(lines[i]);
        while (!body.empty() && text::trim(body.back()).empty()) body.pop_back();
        rule.response = text::join_lines(body, false);
        rules.push_back(std::move(rule));
    }
    return rules;
}

MockBackend& MockBackend::add(MockRule rule) {
    std::lock_guard lock(mutex_);
    rules_.push_back(std::move(rule));
    return *this;
}

MockBackend& MockBackend::reply(std::string response, int times, TokenUsage usage) {
    MockRule rule;
    rule.response = std::move(response);
    rule.times = times;
    rule.usage = usage;
    return add(std::move(rule));
}

ChatResponse MockBackend::complete(const Conversation& conversation) {
    std::lock_guard lock(mutex_);
    used_.resize(rules_.size(), 0);
    ++calls_;
    for (std::size_t r = 0; r < rules_.size(); ++r) {
        const auto& rule = rules_[r];
        if (rule.times > 0 && used_[r] >= rule.times) continue;
        if (!rule_matches(rule, conversation)) continue;
        ++used_[r];
        return ChatResponse{{Role::Assistant, rule.response}, rule.usage};
    }
    auto last = std::string(conversation.last_user());
    if (last.size() > 120) last = last.substr(0, 120) + "...";
    throw Error(ErrorKind::Gateway, "mock script has no rule for request: " + last);
}

ReplayBackend::ReplayBackend(const std::vector<TranscriptEntry>& entries) {
    auto sorted = entries;
    std::stable_sort(sorted.begin(), sorted.end(), [](const TranscriptEntry& a, const TranscriptEntry& b) {
        return a.sequence_number < b.sequence_number;
    });
    for (auto& e : sorted) by_digest_[e.request_digest].push_back(std::move(e));
}

ChatResponse ReplayBackend::complete(const Conversation& conversation) {
    const auto digest = request_digest(conversation);
    std::lock_guard lock(mutex_);
    auto it = by_digest_.find(digest);
    if (it == by_digest_.end() || it->second.empty()) {
        auto last = std::string(conversation.last_user());
        if (last.size() > 80) last = last.substr(0, 80) + "...";
        throw Error(ErrorKind::ReplayMiss, "no recorded entry for digest " + digest + " (last user message: " + last + ")");
    }
    auto entry = std::move(it->second.front());
    it->second.pop_front();
    return ChatResponse{entry.response, entry.usage};
}

std::size_t ReplayBackend::remaining() const {
    std::lock_guard lock(mutex_);
    std::size_t n = 0;
    for (const auto& [_, q] : by_digest_) n += q.size();
    return n;
}

}  // namespace intentrepair::llm
