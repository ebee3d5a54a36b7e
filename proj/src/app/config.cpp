#include "intentrepair/app/config.hpp"

#include <set>

#include "intentrepair/error.hpp"
#include "intentrepair/util/digest.hpp"
#include "intentrepair/util/text.hpp"

namespace intentrepair::app {

std::string_view to_string(BackendKind b) {
    switch (b) {
        case BackendKind::Live: return "live";
        case BackendKind::Replay: return "replay";
        case BackendKind::Mock: return "mock";
    }
    return "replay";
}

BackendKind parse_backend(std::string_view s) {
    if (s == "live") return BackendKind::Live;
    if (s == "replay") return BackendKind::Replay;
    if (s == "mock") return BackendKind::Mock;
    throw Error(ErrorKind::InvalidConfiguration, "unknown backend '" + std::string(s) + "'");
}

RunConfig RunConfig::load(const std::string& path) {
    Json j;
    try {
        j = Json::parse(text::read_file(path));
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::InvalidConfiguration, "config '" + path + "': " + e.what());
    }
    return from_json(j);
}

RunConfig RunConfig::from_json(const Json& j) {
    static const std::set<std::string> kKeys{
        "k", "n", "keep_fraction", "max_refinement_rounds", "max_test_repairs", "intent_regeneration_cap",
        "root_causes_per_intent", "llm", "token_budget", "context_line_budget", "feedback_bytes", "workers",
        "backend"};
    static const std::set<std::string> kLlmKeys{"model",   "temperature", "max_tokens",     "endpoint",
                                                "api_key_env", "retries", "timeout_seconds"};
    if (!j.is_object()) throw Error(ErrorKind::InvalidConfiguration, "config must be a JSON object");
    for (const auto& [key, _] : j.items())
        if (!kKeys.count(key)) throw Error(ErrorKind::InvalidConfiguration, "unknown config key '" + key + "'");

    RunConfig c;
    try {
        c.k = j.value("k", c.k);
        c.n = j.value("n", c.n);
        c.keep_fraction = j.value("keep_fraction", c.keep_fraction);
        c.max_refinement_rounds = j.value("max_refinement_rounds", c.max_refinement_rounds);
        c.max_test_repairs = j.value("max_test_repairs", c.max_test_repairs);
        c.intent_regeneration_cap = j.value("intent_regeneration_cap", c.intent_regeneration_cap);
        c.root_causes_per_intent = j.value("root_causes_per_intent", c.root_causes_per_intent);
        c.context_line_budget = j.value("context_line_budget", c.context_line_budget);
        c.feedback_bytes = j.value("feedback_bytes", c.feedback_bytes);
        c.workers = j.value("workers", c.workers);
        if (j.contains("backend")) c.backend = parse_backend(j.at("backend").get<std::string>());
        if (j.contains("token_budget")) {
            if (j.at("token_budget").is_null()) c.token_budget.reset();
            else c.token_budget = j.at("token_budget").get<std::int64_t>();
        }
        if (j.contains("llm")) {
            const auto& l = j.at("llm");
            for (const auto& [key, _] : l.items())
                if (!kLlmKeys.count(key)) throw Error(ErrorKind::InvalidConfiguration, "unknown llm key '" + key + "'");
            c.llm.model = l.value("model", c.llm.model);
            c.llm.temperature = l.value("temperature", c.llm.temperature);
            c.llm.max_tokens = l.value("max_tokens", c.llm.max_tokens);
            c.endpoint = l.value("endpoint", c.endpoint);
            c.api_key_env = l.value("api_key_env", c.api_key_env);
            c.llm_retries = l.value("retries", c.llm_retries);
            c.llm_timeout_seconds = l.value("timeout_seconds", c.llm_timeout_seconds);
        }
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::InvalidConfiguration, std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

Json RunConfig::settings_json() const {
    Json j;
    j["k"] = k;
    j["n"] = n;
    j["keep_fraction"] = keep_fraction;
    j["max_refinement_rounds"] = max_refinement_rounds;
    j["max_test_repairs"] = max_test_repairs;
    j["intent_regeneration_cap"] = intent_regeneration_cap;
    j["root_causes_per_intent"] = root_causes_per_intent;
    j["llm"] = Json{{"model", llm.model},
                    {"temperature", llm.temperature},
                    {"max_tokens", llm.max_tokens},
                    {"endpoint", endpoint},
                    {"api_key_env", api_key_env},
                    {"retries", llm_retries},
                    {"timeout_seconds", llm_timeout_seconds}};
    j["token_budget"] = token_budget ? Json(*token_budget) : Json(nullptr);
    j["context_line_budget"] = context_line_budget;
    j["feedback_bytes"] = feedback_bytes;
    j["workers"] = workers;
    j["backend"] = std::string(to_string(backend));
    return j;
}

void RunConfig::validate() const {
    auto positive = [](int v, const char* name) {
        if (v < 1) throw Error(ErrorKind::InvalidConfiguration, std::string(name) + " must be at least 1");
    };
    if (k < 2) throw Error(ErrorKind::InvalidConfiguration, "k must be at least 2");
    positive(n, "n");
    positive(max_refinement_rounds, "max_refinement_rounds");
    positive(max_test_repairs, "max_test_repairs");
    positive(intent_regeneration_cap, "intent_regeneration_cap");
    positive(root_causes_per_intent, "root_causes_per_intent");
    positive(llm_retries, "llm.retries");
    positive(llm_timeout_seconds, "llm.timeout_seconds");
    positive(context_line_budget, "context_line_budget");
    positive(feedback_bytes, "feedback_bytes");
    positive(workers, "workers");
    positive(llm.max_tokens, "llm.max_tokens");
    if (!(keep_fraction > 0.0 && keep_fraction <= 1.0))
        throw Error(ErrorKind::InvalidConfiguration, "keep_fraction must lie in (0, 1]");
    if (token_budget && *token_budget < 1) throw Error(ErrorKind::InvalidConfiguration, "token_budget must be positive");
}

std::string RunConfig::digest() const {
    // The backend selector changes where responses come from, not what the
    // session computes, so replaying a recorded run keeps the digest.
    auto j = settings_json();
    j.erase("backend");
    j.erase("workers");
    return text::sha256_hex(j.dump());
}

}  // namespace intentrepair::app
