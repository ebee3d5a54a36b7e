#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intentrepair/core/ratio.hpp"

namespace intentrepair {

struct SourceFile {
    std::string path;  // relative to the bug directory, '/'-separated
    std::string text;

    bool operator==(const SourceFile&) const = default;
};

/// Inclusive, 1-based line range inside one file.
struct Location {
    std::string path;
    int start_line = 1;
    int end_line = 1;

    bool contains(const Location& other) const {
        return path == other.path && start_line <= other.start_line && other.end_line <= end_line;
    }
    bool operator==(const Location&) const = default;
};

struct BugCase {
    std::string id;
    std::vector<SourceFile> buggy_sources;
    std::string focus_path;  // the presumed-buggy class shown to the LLM first
    std::vector<SourceFile> failing_tests;
    std::vector<std::string> error_messages;
    std::vector<SourceFile> reference_patch;  // fixed versions of files, evaluation mode only
    std::string toolchain_path;
    std::vector<Location> known_faults;  // perfect fault localization when non-empty

    const SourceFile* find_source(std::string_view path) const;
    const SourceFile& focus() const;

    /// Throws InvalidInput when the case-level invariants do not hold.
    void validate() const;

    bool operator==(const BugCase&) const = default;
};

enum class FaultKind { Function, Constructor, VariableDefinition, OtherClassStatement };
enum class LocalizationPrompt { P1, P2, P3 };

struct FaultCandidate {
    FaultKind kind = FaultKind::Function;
    Location location;
    std::string snippet;
    int rank = 1;
    LocalizationPrompt origin_prompt = LocalizationPrompt::P1;

    bool operator==(const FaultCandidate&) const = default;
};

struct FaultyStatement {
    Location location;
    std::string snippet;

    bool operator==(const FaultyStatement&) const = default;
};

enum class IntentProvenance { Initial, Adversarial };

struct ProgramIntent {
    std::string id;
    int ordinal = 1;
    std::string description;
    std::vector<FaultyStatement> faulty_statements;
    IntentProvenance provenance = IntentProvenance::Initial;
    std::optional<Ratio> adversarial_score_vs_first;
    bool accepted = false;
    int regeneration_attempt = 0;

    bool operator==(const ProgramIntent&) const = default;
};

std::string intent_id_for(int ordinal);

enum class CompileStatus { NotAttempted, Compiled, DiscardedAfterRepairs };

struct GeneratedTest {
    std::string id;
    std::string intent_id;
    int index = 1;  // 1-based position in the generating response; aligned across intents
    std::string input_key;
    std::string expected_output;
    std::string source;
    std::string path;  // workspace-relative location of the written test file
    CompileStatus compile_status = CompileStatus::NotAttempted;
    int confidence_rank = 1;
    bool low_confidence = false;
    int repair_attempts = 0;

    /// Compiled, confident tests are the only ones allowed into a matrix or a
    /// validation suite.
    bool usable() const { return compile_status == CompileStatus::Compiled && !low_confidence; }

    bool operator==(const GeneratedTest&) const = default;
};

/// Whitespace runs collapsed to one space, ends trimmed.
std::string canonical_input_key(std::string_view raw);

/// Leading and trailing whitespace removed.
std::string canonical_output(std::string_view raw);

struct AdversarialTestMatrix {
    std::vector<std::string> input_keys;
    /// intent id -> expected output per input key; nullopt where that intent
    /// has no usable test for the row.
    std::map<std::string, std::vector<std::optional<std::string>>> columns;

    bool operator==(const AdversarialTestMatrix&) const = default;
};

struct RootCause {
    std::string id;
    std::string intent_id;
    std::string label;
    int rank = 1;

    bool operator==(const RootCause&) const = default;
};

struct PatchEdit {
    std::string path;
    int start_line = 1;
    int end_line = 1;
    std::string original;
    std::string replacement;

    bool operator==(const PatchEdit&) const = default;
};

enum class Classification {
    Unvalidated,
    CompileError,
    NonPlausible,
    Plausible,
    LikelyOverfitting,
    CorrectExact,
    CorrectBelieved,
};

/// Precedence used when ranking outcomes: higher is better.
int classification_precedence(Classification c);
bool is_correct(Classification c);

enum class Verdict { BelievedCorrect, Overfitting };

struct VerdictRecord {
    Verdict verdict = Verdict::BelievedCorrect;
    std::string reviewer;
    bool override_applied = false;

    bool operator==(const VerdictRecord&) const = default;
};

/// Outcome of running one patch version through the validation pipeline.
struct ValidationSummary {
    bool applied = false;
    bool compiled = false;
    std::vector<std::string> failed_original_tests;
    std::vector<std::string> failed_adversarial_tests;
    std::vector<std::string> failed_confirmed_tests;  // cross-check against a confirmed intent
    std::string diagnostic;

    bool operator==(const ValidationSummary&) const = default;
};

struct PatchVersion {
    std::string id;
    int refinement_round = 0;
    std::vector<PatchEdit> edits;
    Classification classification = Classification::Unvalidated;
    ValidationSummary validation;

    bool operator==(const PatchVersion&) const = default;
};

struct Patch {
    std::string id;
    std::string intent_id;
    std::string root_cause_id;
    std::vector<PatchEdit> edits;
    int refinement_round = 0;
    Classification classification = Classification::Unvalidated;
    ValidationSummary validation;
    std::vector<PatchVersion> history;  // earlier versions of this slot, oldest first
    std::optional<VerdictRecord> verdict;

    bool operator==(const Patch&) const = default;
};

struct LlmParams {
    std::string model = "gpt-4o";
    double temperature = 1.0;
    int max_tokens = 4096;

    bool operator==(const LlmParams&) const = default;
};

struct TokenUsage {
    std::int64_t prompt_tokens = 0;
    std::int64_t completion_tokens = 0;

    std::int64_t total() const { return prompt_tokens + completion_tokens; }
    TokenUsage& operator+=(const TokenUsage& other) {
        prompt_tokens += other.prompt_tokens;
        completion_tokens += other.completion_tokens;
        return *this;
    }
    friend TokenUsage operator+(TokenUsage a, const TokenUsage& b) { return a += b; }
    bool operator==(const TokenUsage&) const = default;
};

}  // namespace intentrepair
