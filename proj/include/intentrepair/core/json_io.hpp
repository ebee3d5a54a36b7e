#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "intentrepair/core/model.hpp"
#include "intentrepair/core/session.hpp"

namespace intentrepair {

using Json = nlohmann::ordered_json;

std::string_view to_string(FaultKind v);
std::string_view to_string(LocalizationPrompt v);
std::string_view to_string(IntentProvenance v);
std::string_view to_string(CompileStatus v);
std::string_view to_string(Classification v);
std::string_view to_string(Verdict v);
std::string_view to_string(OutcomeStatus v);

FaultKind parse_fault_kind(std::string_view s);
Classification parse_classification(std::string_view s);
Verdict parse_verdict(std::string_view s);
SessionState parse_session_state(std::string_view s);

void to_json(Json& j, const Ratio& v);
void from_json(const Json& j, Ratio& v);
void to_json(Json& j, const Location& v);
void from_json(const Json& j, Location& v);
void to_json(Json& j, const FaultCandidate& v);
void from_json(const Json& j, FaultCandidate& v);
void to_json(Json& j, const FaultyStatement& v);
void from_json(const Json& j, FaultyStatement& v);
void to_json(Json& j, const ProgramIntent& v);
void from_json(const Json& j, ProgramIntent& v);
void to_json(Json& j, const GeneratedTest& v);
void from_json(const Json& j, GeneratedTest& v);
void to_json(Json& j, const AdversarialTestMatrix& v);
void from_json(const Json& j, AdversarialTestMatrix& v);
void to_json(Json& j, const RootCause& v);
void from_json(const Json& j, RootCause& v);
void to_json(Json& j, const PatchEdit& v);
void from_json(const Json& j, PatchEdit& v);
void to_json(Json& j, const ValidationSummary& v);
void from_json(const Json& j, ValidationSummary& v);
void to_json(Json& j, const PatchVersion& v);
void from_json(const Json& j, PatchVersion& v);
void to_json(Json& j, const VerdictRecord& v);
void from_json(const Json& j, VerdictRecord& v);
void to_json(Json& j, const Patch& v);
void from_json(const Json& j, Patch& v);
void to_json(Json& j, const LlmParams& v);
void from_json(const Json& j, LlmParams& v);
void to_json(Json& j, const TokenUsage& v);
void from_json(const Json& j, TokenUsage& v);
void to_json(Json& j, const IntentAttempt& v);
void from_json(const Json& j, IntentAttempt& v);
void to_json(Json& j, const IntentTests& v);
void from_json(const Json& j, IntentTests& v);
void to_json(Json& j, const SessionOutcome& v);
void from_json(const Json& j, SessionOutcome& v);
void to_json(Json& j, const SessionReport& v);
void from_json(const Json& j, SessionReport& v);

/// Canonical report text: two-space indentation, fixed key order, trailing
/// newline. Two equal reports always produce equal bytes.
std::string dump_report(const SessionReport& report);
SessionReport parse_report(std::string_view text);

}  // namespace intentrepair
