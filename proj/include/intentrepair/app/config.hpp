#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "intentrepair/core/json_io.hpp"
#include "intentrepair/core/model.hpp"

namespace intentrepair::app {

enum class BackendKind { Live, Replay, Mock };

std::string_view to_string(BackendKind b);
BackendKind parse_backend(std::string_view s);

/// Session configuration, read from a JSON file. Unknown keys are rejected so
/// typos do not silently fall back to defaults.
struct RunConfig {
    int k = 3;
    int n = 4;
    double keep_fraction = 0.7;
    int max_refinement_rounds = 3;
    int max_test_repairs = 3;
    int intent_regeneration_cap = 3;
    int root_causes_per_intent = 3;

    LlmParams llm;
    std::string endpoint = "https://api.openai.com/v1/chat/completions";
    std::string api_key_env = "OPENAI_API_KEY";
    int llm_retries = 3;
    int llm_timeout_seconds = 120;

    std::optional<std::int64_t> token_budget = 500000;
    int context_line_budget = 400;
    int feedback_bytes = 4096;
    int workers = 2;
    BackendKind backend = BackendKind::Replay;

    // Paths are run plumbing and stay out of the digest.
    std::string bug_dir;
    std::string transcript;
    std::string mock_script;
    std::string out_dir;
    std::string scratch_dir;

    static RunConfig load(const std::string& path);
    static RunConfig from_json(const Json& j);

    /// Every setting except paths, in a fixed key order.
    Json settings_json() const;

    /// Throws InvalidConfiguration when a count is below 1 or keep_fraction
    /// falls outside (0, 1].
    void validate() const;

    /// SHA-256 of the canonical settings.
    std::string digest() const;
};

}  // namespace intentrepair::app
