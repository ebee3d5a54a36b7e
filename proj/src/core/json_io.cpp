#include "intentrepair/core/json_io.hpp"

#include <array>
#include <utility>

#include "intentrepair/error.hpp"

namespace intentrepair {

namespace {

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E v) {
    for (const auto& [value, name] : table) {
        if (value == v) return name;
    }
    return "?";
}

template <typename E, std::size_t N>
E value_of(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view s, const char* what) {
    for (const auto& [value, name] : table) {
        if (name == s) return value;
    }
    throw Error(ErrorKind::Parse, std::string("unknown ") + what + " '" + std::string(s) + "'");
}

constexpr std::array<std::pair<FaultKind, std::string_view>, 4> kFaultKinds{{
    {FaultKind::Function, "function"},
    {FaultKind::Constructor, "constructor"},
    {FaultKind::VariableDefinition, "variable-definition"},
    {FaultKind::OtherClassStatement, "other-class-statement"},
}};
constexpr std::array<std::pair<LocalizationPrompt, std::string_view>, 3> kPrompts{{
    {LocalizationPrompt::P1, "P1"},
    {LocalizationPrompt::P2, "P2"},
    {LocalizationPrompt::P3, "P3"},
}};
constexpr std::array<std::pair<IntentProvenance, std::string_view>, 2> kProvenance{{
    {IntentProvenance::Initial, "initial"},
    {IntentProvenance::Adversarial, "adversarial"},
}};
constexpr std::array<std::pair<CompileStatus, std::string_view>, 3> kCompile{{
    {CompileStatus::NotAttempted, "not-attempted"},
    {CompileStatus::Compiled, "compiled"},
    {CompileStatus::DiscardedAfterRepairs, "discarded-after-repairs"},
}};
constexpr std::array<std::pair<Classification, std::string_view>, 7> kClassifications{{
    {Classification::Unvalidated, "unvalidated"},
    {Classification::CompileError, "compile-error"},
    {Classification::NonPlausible, "non-plausible"},
    {Classification::Plausible, "plausible"},
    {Classification::LikelyOverfitting, "likely-overfitting"},
    {Classification::CorrectExact, "correct-exact"},
    {Classification::CorrectBelieved, "correct-believed"},
}};
constexpr std::array<std::pair<Verdict, std::string_view>, 2> kVerdicts{{
    {Verdict::BelievedCorrect, "believed-correct"},
    {Verdict::Overfitting, "overfitting"},
}};
constexpr std::array<std::pair<OutcomeStatus, std::string_view>, 4> kOutcomes{{
    {OutcomeStatus::Success, "success"},
    {OutcomeStatus::NoPlausiblePatch, "no-plausible-patch"},
    {OutcomeStatus::BudgetExhausted, "budget-exhausted"},
    {OutcomeStatus::Error, "error"},
}};

template <typename T>
std::optional<T> optional_field(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

template <typename T>
void put_optional(Json& j, const char* key, const std::optional<T>& v) {
    if (v) {
        j[key] = *v;
    } else {
        j[key] = nullptr;
    }
}

}  // namespace

std::string_view to_string(FaultKind v) { return name_of(kFaultKinds, v); }
std::string_view to_string(LocalizationPrompt v) { return name_of(kPrompts, v); }
std::string_view to_string(IntentProvenance v) { return name_of(kProvenance, v); }
std::string_view to_string(CompileStatus v) { return name_of(kCompile, v); }
std::string_view to_string(Classification v) { return name_of(kClassifications, v); }
std::string_view to_string(Verdict v) { return name_of(kVerdicts, v); }
std::string_view to_string(OutcomeStatus v) { return name_of(kOutcomes, v); }

FaultKind parse_fault_kind(std::string_view s) { return value_of(kFaultKinds, s, "fault kind"); }
Classification parse_classification(std::string_view s) { return value_of(kClassifications, s, "classification"); }
Verdict parse_verdict(std::string_view s) { return value_of(kVerdicts, s, "verdict"); }

SessionState parse_session_state(std::string_view s) {
    for (int i = 0; i <= static_cast<int>(SessionState::Aborted); ++i) {
        auto st = static_cast<SessionState>(i);
        if (to_string(st) == s) return st;
    }
    throw Error(ErrorKind::Parse, "unknown session state '" + std::string(s) + "'");
}

void to_json(Json& j, const Ratio& v) {
    j = Json{{"numerator", v.numerator}, {"denominator", v.denominator}, {"value", v.value()}};
}
void from_json(const Json& j, Ratio& v) {
    v.numerator = j.at("numerator").get<std::int64_t>();
    v.denominator = j.at("denominator").get<std::int64_t>();
}

void to_json(Json& j, const Location& v) {
    j = Json{{"path", v.path}, {"start_line", v.start_line}, {"end_line", v.end_line}};
}
void from_json(const Json& j, Location& v) {
    v.path = j.at("path").get<std::string>();
    v.start_line = j.at("start_line").get<int>();
    v.end_line = j.at("end_line").get<int>();
}

void to_json(Json& j, const FaultCandidate& v) {
    j = Json{{"kind", to_string(v.kind)},
             {"location", v.location},
             {"snippet", v.snippet},
             {"rank", v.rank},
             {"origin_prompt", to_string(v.origin_prompt)}};
}
void from_json(const Json& j, FaultCandidate& v) {
    v.kind = parse_fault_kind(j.at("kind").get<std::string>());
    v.location = j.at("location").get<Location>();
    v.snippet = j.at("snippet").get<std::string>();
    v.rank = j.at("rank").get<int>();
    v.origin_prompt = value_of(kPrompts, j.at("origin_prompt").get<std::string>(), "prompt");
}

void to_json(Json& j, const FaultyStatement& v) { j = Json{{"location", v.location}, {"snippet", v.snippet}}; }
void from_json(const Json& j, FaultyStatement& v) {
    v.location = j.at("location").get<Location>();
    v.snippet = j.at("snippet").get<std::string>();
}

void to_json(Json& j, const ProgramIntent& v) {
    j = Json{{"id", v.id},
             {"ordinal", v.ordinal},
             {"description", v.description},
             {"faulty_statements", v.faulty_statements},
             {"provenance", to_string(v.provenance)}};
    put_optional(j, "adversarial_score_vs_first", v.adversarial_score_vs_first);
    j["accepted"] = v.accepted;
    j["regeneration_attempt"] = v.regeneration_attempt;
}
void from_json(const Json& j, ProgramIntent& v) {
    v.id = j.at("id").get<std::string>();
    v.ordinal = j.at("ordinal").get<int>();
    v.description = j.at("description").get<std::string>();
    v.faulty_statements = j.at("faulty_statements").get<std::vector<FaultyStatement>>();
    v.provenance = value_of(kProvenance, j.at("provenance").get<std::string>(), "provenance");
    v.adversarial_score_vs_first = optional_field<Ratio>(j, "adversarial_score_vs_first");
    v.accepted = j.at("accepted").get<bool>();
    v.regeneration_attempt = j.at("regeneration_attempt").get<int>();
}

void to_json(Json& j, const GeneratedTest& v) {
    j = Json{{"id", v.id},
             {"intent_id", v.intent_id},
             {"index", v.index},
             {"input_key", v.input_key},
             {"expected_output", v.expected_output},
             {"path", v.path},
             {"compile_status", to_string(v.compile_status)},
             {"confidence_rank", v.confidence_rank},
             {"low_confidence", v.low_confidence},
             {"repair_attempts", v.repair_attempts},
             {"source", v.source}};
}
void from_json(const Json& j, GeneratedTest& v) {
    v.id = j.at("id").get<std::string>();
    v.intent_id = j.at("intent_id").get<std::string>();
    v.index = j.at("index").get<int>();
    v.input_key = j.at("input_key").get<std::string>();
    v.expected_output = j.at("expected_output").get<std::string>();
    v.path = j.at("path").get<std::string>();
    v.compile_status = value_of(kCompile, j.at("compile_status").get<std::string>(), "compile status");
    v.confidence_rank = j.at("confidence_rank").get<int>();
    v.low_confidence = j.at("low_confidence").get<bool>();
    v.repair_attempts = j.at("repair_attempts").get<int>();
    v.source = j.at("source").get<std::string>();
}

void to_json(Json& j, const AdversarialTestMatrix& v) {
    Json columns = Json::object();
    for (const auto& [id, column] : v.columns) {
        Json col = Json::array();
        for (const auto& cell : column) {
            if (cell) {
                col.push_back(*cell);
            } else {
                col.push_back(nullptr);
            }
        }
        columns[id] = std::move(col);
    }
    j = Json{{"input_keys", v.input_keys}, {"columns", std::move(columns)}};
}
void from_json(const Json& j, AdversarialTestMatrix& v) {
    v.input_keys = j.at("input_keys").get<std::vector<std::string>>();
    v.columns.clear();
    for (const auto& [id, col] : j.at("columns").items()) {
        auto& out = v.columns[id];
        for (const auto& cell : col) {
            if (cell.is_null()) {
                out.emplace_back(std::nullopt);
            } else {
                out.emplace_back(cell.get<std::string>());
            }
        }
    }
}

void to_json(Json& j, const RootCause& v) {
    j = Json{{"id", v.id}, {"intent_id", v.intent_id}, {"label", v.label}, {"rank", v.rank}};
}
void from_json(const Json& j, RootCause& v) {
    v.id = j.at("id").get<std::string>();
    v.intent_id = j.at("intent_id").get<std::string>();
    v.label = j.at("label").get<std::string>();
    v.rank = j.at("rank").get<int>();
}

void to_json(Json& j, const PatchEdit& v) {
    j = Json{{"path", v.path},
             {"start_line", v.start_line},
             {"end_line", v.end_line},
             {"original", v.original},
             {"replacement", v.replacement}};
}
void from_json(const Json& j, PatchEdit& v) {
    v.path = j.at("path").get<std::string>();
    v.start_line = j.at("start_line").get<int>();
    v.end_line = j.at("end_line").get<int>();
    v.original = j.at("original").get<std::string>();
    v.replacement = j.at("replacement").get<std::string>();
}

void to_json(Json& j, const ValidationSummary& v) {
    j = Json{{"applied", v.applied},
             {"compiled", v.compiled},
             {"failed_original_tests", v.failed_original_tests},
             {"failed_adversarial_tests", v.failed_adversarial_tests},
             {"failed_confirmed_tests", v.failed_confirmed_tests},
             {"diagnostic", v.diagnostic}};
}
void from_json(const Json& j, ValidationSummary& v) {
    v.applied = j.at("applied").get<bool>();
    v.compiled = j.at("compiled").get<bool>();
    v.failed_original_tests = j.at("failed_original_tests").get<std::vector<std::string>>();
    v.failed_adversarial_tests = j.at("failed_adversarial_tests").get<std::vector<std::string>>();
    v.failed_confirmed_tests = j.at("failed_confirmed_tests").get<std::vector<std::string>>();
    v.diagnostic = j.at("diagnostic").get<std::string>();
}

void to_json(Json& j, const PatchVersion& v) {
    j = Json{{"id", v.id},
             {"refinement_round", v.refinement_round},
             {"classification", to_string(v.classification)},
             {"edits", v.edits},
             {"validation", v.validation}};
}
void from_json(const Json& j, PatchVersion& v) {
    v.id = j.at("id").get<std::string>();
    v.refinement_round = j.at("refinement_round").get<int>();
    v.classification = parse_classification(j.at("classification").get<std::string>());
    v.edits = j.at("edits").get<std::vector<PatchEdit>>();
    v.validation = j.at("validation").get<ValidationSummary>();
}

void to_json(Json& j, const VerdictRecord& v) {
    j = Json{{"verdict", to_string(v.verdict)}, {"reviewer", v.reviewer}, {"override", v.override_applied}};
}
void from_json(const Json& j, VerdictRecord& v) {
    v.verdict = parse_verdict(j.at("verdict").get<std::string>());
    v.reviewer = j.at("reviewer").get<std::string>();
    v.override_applied = j.at("override").get<bool>();
}

void to_json(Json& j, const Patch& v) {
    j = Json{{"id", v.id},
             {"intent_id", v.intent_id},
             {"root_cause_id", v.root_cause_id},
             {"refinement_round", v.refinement_round},
             {"classification", to_string(v.classification)},
             {"edits", v.edits},
             {"validation", v.validation},
             {"history", v.history}};
    put_optional(j, "verdict", v.verdict);
}
void from_json(const Json& j, Patch& v) {
    v.id = j.at("id").get<std::string>();
    v.intent_id = j.at("intent_id").get<std::string>();
    v.root_cause_id = j.at("root_cause_id").get<std::string>();
    v.refinement_round = j.at("refinement_round").get<int>();
    v.classification = parse_classification(j.at("classification").get<std::string>());
    v.edits = j.at("edits").get<std::vector<PatchEdit>>();
    v.validation = j.at("validation").get<ValidationSummary>();
    v.history = j.at("history").get<std::vector<PatchVersion>>();
    v.verdict = optional_field<VerdictRecord>(j, "verdict");
}

void to_json(Json& j, const LlmParams& v) {
    j = Json{{"model", v.model}, {"temperature", v.temperature}, {"max_tokens", v.max_tokens}};
}
void from_json(const Json& j, LlmParams& v) {
    v.model = j.value("model", v.model);
    v.temperature = j.value("temperature", v.temperature);
    v.max_tokens = j.value("max_tokens", v.max_tokens);
}

void to_json(Json& j, const TokenUsage& v) {
    j = Json{{"prompt_tokens", v.prompt_tokens}, {"completion_tokens", v.completion_tokens}, {"total", v.total()}};
}
void from_json(const Json& j, TokenUsage& v) {
    v.prompt_tokens = j.at("prompt_tokens").get<std::int64_t>();
    v.completion_tokens = j.at("completion_tokens").get<std::int64_t>();
}

void to_json(Json& j, const IntentAttempt& v) {
    j = Json{{"ordinal", v.ordinal}, {"attempt", v.attempt}, {"description", v.description}};
    put_optional(j, "score", v.score);
    j["threshold"] = v.threshold;
    j["accepted"] = v.accepted;
    j["note"] = v.note;
}
void from_json(const Json& j, IntentAttempt& v) {
    v.ordinal = j.at("ordinal").get<int>();
    v.attempt = j.at("attempt").get<int>();
    v.description = j.at("description").get<std::string>();
    v.score = optional_field<Ratio>(j, "score");
    v.threshold = j.at("threshold").get<Ratio>();
    v.accepted = j.at("accepted").get<bool>();
    v.note = j.at("note").get<std::string>();
}

void to_json(Json& j, const IntentTests& v) {
    j = Json{{"intent_id", v.intent_id}, {"validation_suite", v.validation_suite}, {"tests", v.tests}};
}
void from_json(const Json& j, IntentTests& v) {
    v.intent_id = j.at("intent_id").get<std::string>();
    v.validation_suite = j.at("validation_suite").get<std::vector<std::string>>();
    v.tests = j.at("tests").get<std::vector<GeneratedTest>>();
}

void to_json(Json& j, const SessionOutcome& v) {
    j = Json{{"status", to_string(v.status)}, {"failure_stage", v.failure_stage}, {"message", v.message}};
}
void from_json(const Json& j, SessionOutcome& v) {
    v.status = value_of(kOutcomes, j.at("status").get<std::string>(), "outcome");
    v.failure_stage = j.at("failure_stage").get<std::string>();
    v.message = j.at("message").get<std::string>();
}

void to_json(Json& j, const SessionReport& v) {
    Json stages = Json::array();
    for (auto s : v.stages) stages.push_back(to_string(s));

    Json per_agent = Json::object();
    for (const auto& [agent, usage] : v.tokens.per_agent) per_agent[agent] = usage;

    j = Json::object();
    j["bug"] = v.bug_id;
    j["config_digest"] = v.config_digest;
    j["stages"] = std::move(stages);
    j["fault_candidates"] = v.fault_candidates;
    j["intents"] = v.intents;
    j["tests"] = v.tests;
    j["matrix"] = v.matrix;
    j["root_causes"] = v.root_causes;
    j["patches"] = v.patches;
    j["scores"] = v.scores;
    j["tokens"] = Json{{"per_agent", std::move(per_agent)}, {"total", v.tokens.total}, {"calls", v.tokens.calls}};
    put_optional(j, "selected_intent", v.selected_intent);
    j["outcome"] = v.outcome;
    j["warnings"] = v.warnings;
    j["timing"] = Json{{"started_at", v.timing.started_at}, {"duration_ms", v.timing.duration_ms}};
}

void from_json(const Json& j, SessionReport& v) {
    v.bug_id = j.at("bug").get<std::string>();
    v.config_digest = j.at("config_digest").get<std::string>();
    v.stages.clear();
    for (const auto& s : j.at("stages")) v.stages.push_back(parse_session_state(s.get<std::string>()));
    v.fault_candidates = j.at("fault_candidates").get<std::vector<FaultCandidate>>();
    v.intents = j.at("intents").get<std::vector<ProgramIntent>>();
    v.tests = j.at("tests").get<std::vector<IntentTests>>();
    v.matrix = j.at("matrix").get<AdversarialTestMatrix>();
    v.root_causes = j.at("root_causes").get<std::vector<RootCause>>();
    v.patches = j.at("patches").get<std::vector<Patch>>();
    v.scores = j.at("scores").get<std::vector<IntentAttempt>>();
    const auto& tokens = j.at("tokens");
    v.tokens.per_agent.clear();
    for (const auto& [agent, usage] : tokens.at("per_agent").items()) v.tokens.per_agent[agent] = usage.get<TokenUsage>();
    v.tokens.total = tokens.at("total").get<TokenUsage>();
    v.tokens.calls = tokens.at("calls").get<std::int64_t>();
    v.selected_intent = optional_field<int>(j, "selected_intent");
    v.outcome = j.at("outcome").get<SessionOutcome>();
    v.warnings = j.at("warnings").get<std::vector<std::string>>();
    v.timing.started_at = j.at("timing").at("started_at").get<std::string>();
    v.timing.duration_ms = j.at("timing").at("duration_ms").get<std::int64_t>();
}

std::string dump_report(const SessionReport& report) {
    Json j = report;
    return j.dump(2) + "\n";
}

SessionReport parse_report(std::string_view text) {
    try {
        return Json::parse(text).get<SessionReport>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("malformed report: ") + e.what());
    }
}

}  // namespace intentrepair
