#include "intentrepair/core/model.hpp"

#include <algorithm>
#include <set>

#include "intentrepair/error.hpp"
#include "intentrepair/util/text.hpp"

namespace intentrepair {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidConfiguration: return "invalid-configuration";
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::Protocol: return "protocol-error";
        case ErrorKind::Parse: return "parse-error";
        case ErrorKind::ReplayMiss: return "replay-miss";
        case ErrorKind::Gateway: return "gateway-error";
        case ErrorKind::Transport: return "transport-error";
        case ErrorKind::BudgetExhausted: return "budget-exhausted";
        case ErrorKind::Environment: return "environment-error";
        case ErrorKind::Localization: return "localization-failed";
        case ErrorKind::IntentGeneration: return "intent-generation-failed";
        case ErrorKind::TestGeneration: return "test-generation-failed";
        case ErrorKind::ScoreUndefined: return "score-undefined";
        case ErrorKind::Verdict: return "verdict-rejected";
        case ErrorKind::Io: return "io-error";
    }
    return "unknown-error";
}

const SourceFile* BugCase::find_source(std::string_view path) const {
    auto it = std::find_if(buggy_sources.begin(), buggy_sources.end(),
                           [&](const SourceFile& f) { return f.path == path; });
    return it == buggy_sources.end() ? nullptr : &*it;
}

const SourceFile& BugCase::focus() const {
    if (const auto* f = find_source(focus_path)) return *f;
    return buggy_sources.front();
}

void BugCase::validate() const {
    if (buggy_sources.empty()) throw Error(ErrorKind::InvalidInput, "bug '" + id + "' has no buggy sources");
    if (failing_tests.empty() && error_messages.empty())
        throw Error(ErrorKind::InvalidInput, "bug '" + id + "' needs a failing test or an error message");
    std::set<std::string> seen;
    auto check = [&](const std::vector<SourceFile>& files) {
        for (const auto& f : files) {
            if (!seen.insert(f.path).second)
                throw Error(ErrorKind::InvalidInput, "duplicate path '" + f.path + "' in bug '" + id + "'");
        }
    };
    check(buggy_sources);
    check(failing_tests);
    if (!focus_path.empty() && find_source(focus_path) == nullptr)
        throw Error(ErrorKind::InvalidInput, "focus file '" + focus_path + "' is not a buggy source");
}

std::string intent_id_for(int ordinal) { return "intent-" + std::to_string(ordinal); }

std::string canonical_input_key(std::string_view raw) { return text::collapse_whitespace(raw); }

std::string canonical_output(std::string_view raw) { return text::trim(raw); }

int classification_precedence(Classification c) {
    switch (c) {
        case Classification::CorrectExact: return 6;
        case Classification::CorrectBelieved: return 5;
        case Classification::LikelyOverfitting: return 4;
        case Classification::Plausible: return 3;
        case Classification::NonPlausible: return 2;
        case Classification::CompileError: return 1;
        case Classification::Unvalidated: return 0;
    }
    return 0;
}

bool is_correct(Classification c) {
    return c == Classification::CorrectExact || c == Classification::CorrectBelieved;
}

}  // namespace intentrepair
