#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <cstdlib>

#include "json.hpp"

#include "intentrepair/error.hpp"
#include "intentrepair/llm/backends.hpp"

namespace intentrepair::llm {

namespace {

struct Endpoint {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

Endpoint split_endpoint(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw Error(ErrorKind::InvalidConfiguration, "endpoint '" + url + "' has no scheme");
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

LiveBackend::LiveBackend(LiveConfig config) : config_(std::move(config)) {
    if (const char* key = std::getenv(config_.api_key_env.c_str())) api_key_ = key;
}

std::string LiveBackend::request_body(const Conversation& conversation) {
    nlohmann::ordered_json body;
    body["model"] = conversation.params.model;
    body["temperature"] = conversation.params.temperature;
    body["max_tokens"] = conversation.params.max_tokens;
    body["messages"] = nlohmann::ordered_json::array();
    for (const auto& m : conversation.messages)
        body["messages"].push_back({{"role", to_string(m.role)}, {"content", m.content}});
    return body.dump();
}

ChatResponse LiveBackend::parse_response(const std::string& body) {
    try {
        const auto j = nlohmann::json::parse(body);
        ChatResponse out;
        out.message.role = Role::Assistant;
        out.message.content = j.at("choices").at(0).at("message").at("content").get<std::string>();
        if (j.contains("usage")) {
            out.usage.prompt_tokens = j["usage"].value("prompt_tokens", 0);
            out.usage.completion_tokens = j["usage"].value("completion_tokens", 0);
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Gateway, std::string("malformed chat-completion response: ") + e.what());
    }
}

ChatResponse LiveBackend::complete(const Conversation& conversation) {
    const auto endpoint = split_endpoint(config_.endpoint);
    httplib::Client client(endpoint.origin);
    client.set_connection_timeout(config_.timeout_seconds, 0);
    client.set_read_timeout(config_.timeout_seconds, 0);
    client.set_write_timeout(config_.timeout_seconds, 0);

    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    auto res = client.Post(endpoint.path, headers, request_body(conversation), "application/json");
    if (!res) throw Error(ErrorKind::Transport, "request to " + config_.endpoint + " failed: " + httplib::to_string(res.error()));
    if (res->status == 429 || res->status >= 500)
        throw Error(ErrorKind::Transport, "HTTP " + std::to_string(res->status) + " from " + config_.endpoint);
    if (res->status != 200)
        throw Error(ErrorKind::Gateway, "HTTP " + std::to_string(res->status) + " from " + config_.endpoint + ": " + res->body);
    return parse_response(res->body);
}

}  // namespace intentrepair::llm
