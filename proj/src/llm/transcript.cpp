#include "intentrepair/llm/transcript.hpp"

#include "json.hpp"

#include "intentrepair/core/json_io.hpp"
#include "intentrepair/error.hpp"
#include "intentrepair/util/digest.hpp"
#include "intentrepair/util/text.hpp"

namespace intentrepair::llm {

namespace {

Json conversation_to_json(const Conversation& c) {
    Json messages = Json::array();
    for (const auto& m : c.messages) messages.push_back(Json{{"role", to_string(m.role)}, {"content", m.content}});
    return Json{{"messages", std::move(messages)}, {"params", c.params}};
}

Conversation conversation_from_json(const Json& j) {
    Conversation c;
    for (const auto& m : j.at("messages"))
        c.messages.push_back({parse_role(m.at("role").get<std::string>()), m.at("content").get<std::string>()});
    c.params = j.at("params").get<LlmParams>();
    return c;
}

}  // namespace

std::string request_digest(const Conversation& conversation) {
    // nlohmann::json (not ordered_json) keeps object keys sorted.
    nlohmann::json canonical;
    canonical["messages"] = nlohmann::json::array();
    for (const auto& m : conversation.messages) {
        canonical["messages"].push_back(
            {{"role", to_string(m.role)}, {"content", text::collapse_whitespace(m.content)}});
    }
    canonical["params"] = {{"model", conversation.params.model},
                           {"temperature", conversation.params.temperature},
                           {"max_tokens", conversation.params.max_tokens}};
    return text::sha256_hex(canonical.dump());
}

std::string to_json_line(const TranscriptEntry& e) {
    Json j;
    j["sequence_number"] = e.sequence_number;
    j["request_digest"] = e.request_digest;
    j["request"] = conversation_to_json(e.request);
    j["response"] = Json{{"role", to_string(e.response.role)}, {"content", e.response.content}};
    j["usage"] = Json{{"prompt_tokens", e.usage.prompt_tokens}, {"completion_tokens", e.usage.completion_tokens}};
    return j.dump();
}

TranscriptEntry parse_json_line(const std::string& line) {
    try {
        const auto j = Json::parse(line);
        TranscriptEntry e;
        e.sequence_number = j.at("sequence_number").get<std::int64_t>();
        e.request_digest = j.at("request_digest").get<std::string>();
        e.request = conversation_from_json(j.at("request"));
        e.response = {parse_role(j.at("response").at("role").get<std::string>()),
                      j.at("response").at("content").get<std::string>()};
        e.usage.prompt_tokens = j.at("usage").at("prompt_tokens").get<std::int64_t>();
        e.usage.completion_tokens = j.at("usage").at("completion_tokens").get<std::int64_t>();
        return e;
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorKind::Parse, std::string("malformed transcript line: ") + ex.what());
    }
}

std::vector<TranscriptEntry> read_transcript(const std::string& path) {
    std::vector<TranscriptEntry> out;
    for (const auto& line : text::split_lines(text::read_file(path))) {
        if (text::trim(line).empty()) continue;
        out.push_back(parse_json_line(line));
    }
    return out;
}

TranscriptWriter::TranscriptWriter(const std::string& path) : path_(path) {
    text::write_file(path, "");
    out_.open(path, std::ios::binary | std::ios::app);
    if (!out_) throw Error(ErrorKind::Io, "cannot open transcript '" + path + "'");
}

void TranscriptWriter::append(const TranscriptEntry& entry) {
    const auto line = to_json_line(entry);
    std::lock_guard lock(mutex_);
    out_ << line << '\n';
    out_.flush();
}

}  // namespace intentrepair::llm
