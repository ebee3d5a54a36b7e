#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intentrepair/core/model.hpp"

namespace intentrepair {

/// Pipeline stages in the order a session visits them.
enum class SessionState {
    Created,
    Localizing,
    Localized,
    InferringIntents,
    IntentsAccepted,
    TestGen,
    TestsReady,
    Patching,
    Validate,
    Report,
    Aborted,
};

enum class SessionEvent {
    StartLocalize,
    FaultsLocated,
    StartIntentGen,
    IntentsScored,
    StartTestGen,
    TestsPrioritized,
    StartRepair,
    PatchesGenerated,
    AllPatchesClassified,
    Abort,
};

std::string_view to_string(SessionState s);
std::string_view to_string(SessionEvent e);

/// Next state for a legal event. Illegal events throw a protocol error naming
/// both the state and the event.
SessionState session_transition(SessionState state, SessionEvent event);

/// 1/k, the minimum adversarial score an intent must reach against intent 1.
Ratio adversarial_threshold(int k);

/// One scored attempt at an adversarial intent, kept for the audit trail.
struct IntentAttempt {
    int ordinal = 2;
    int attempt = 0;
    std::string description;
    std::optional<Ratio> score;  // nullopt when the score was undefined
    Ratio threshold;
    bool accepted = false;
    std::string note;

    bool operator==(const IntentAttempt&) const = default;
};

struct IntentTests {
    std::string intent_id;
    std::vector<GeneratedTest> tests;
    std::vector<std::string> validation_suite;  // test ids kept after prioritization

    bool operator==(const IntentTests&) const = default;
};

enum class OutcomeStatus { Success, NoPlausiblePatch, BudgetExhausted, Error };

struct SessionOutcome {
    OutcomeStatus status = OutcomeStatus::Error;
    std::string failure_stage;  // empty on success
    std::string message;

    bool operator==(const SessionOutcome&) const = default;
};

struct AgentTokens {
    std::map<std::string, TokenUsage> per_agent;
    TokenUsage total;
    std::int64_t calls = 0;

    bool operator==(const AgentTokens&) const = default;
};

struct SessionTiming {
    std::string started_at;  // ISO-8601 UTC
    std::int64_t duration_ms = 0;

    bool operator==(const SessionTiming&) const = default;
};

struct SessionReport {
    std::string bug_id;
    std::string config_digest;
    std::vector<SessionState> stages;
    std::vector<FaultCandidate> fault_candidates;
    std::vector<ProgramIntent> intents;
    std::vector<IntentAttempt> scores;
    std::vector<IntentTests> tests;
    AdversarialTestMatrix matrix;
    std::vector<RootCause> root_causes;
    std::vector<Patch> patches;
    AgentTokens tokens;
    std::optional<int> selected_intent;
    SessionOutcome outcome;
    std::vector<std::string> warnings;
    SessionTiming timing;

    const ProgramIntent* find_intent(std::string_view id) const;
    const IntentTests* tests_for(std::string_view intent_id) const;
    Patch* find_patch(std::string_view id);

    bool operator==(const SessionReport&) const = default;
};

}  // namespace intentrepair
