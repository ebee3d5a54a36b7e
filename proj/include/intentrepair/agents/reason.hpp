#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "intentrepair/core/model.hpp"
#include "intentrepair/core/session.hpp"
#include "intentrepair/llm/gateway.hpp"

namespace intentrepair::agents {

inline constexpr int kLocalizationTarget = 5;
inline constexpr int kFunctionCandidates = 3;

struct ReasonOptions {
    int context_line_budget = 400;
};

struct IntentGeneration {
    std::vector<ProgramIntent> intents;
    std::vector<IntentAttempt> attempts;
};

/// Fault localization (class to statement level) and sequential inference of
/// mutually adversarial program intents.
class ReasonAgent {
public:
    /// Scores `candidate` against `first`; nullopt when the score is
    /// undefined. The candidate arrives with ordinal and attempt already set.
    /// A test-generation error from the scorer turns filtering off for the
    /// rest of the session.
    using Scorer = std::function<std::optional<Ratio>(const ProgramIntent& first, const ProgramIntent& candidate)>;

    ReasonAgent(llm::Gateway& gateway, const BugCase& bug, LlmParams params, ReasonOptions options = {});

    /// Up to five ranked candidates: up to three functions, then alternatives
    /// filling the remaining slots. Fewer are returned, with a warning, when the model cannot supply
    /// distinct locations. Throws a localization error when none survive.
    std::vector<FaultCandidate> localize_faults();

    /// Candidates built from the manifest's known faults, each widened to
    /// its enclosing function.
    std::vector<FaultCandidate> known_fault_candidates() const;

    ProgramIntent infer_initial_intent(const std::vector<FaultCandidate>& candidates);

    /// Requires a prior infer_initial_intent call. `rejected` lists attempts
    /// already turned down for the ordinal being generated.
    ProgramIntent infer_adversarial_intent(const std::vector<ProgramIntent>& prior,
                                           const std::vector<IntentAttempt>& rejected = {});

    /// Intent 1 plus k-1 adversarial intents. Each adversarial attempt below
    /// 1/k is regenerated until `attempt_cap` attempts were made; the best one
    /// is then kept with accepted=false. An empty scorer disables filtering.
    IntentGeneration generate_intents(const std::vector<FaultCandidate>& candidates, int k, int attempt_cap,
                                      const Scorer& scorer);

    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    std::vector<FaultCandidate> parse_candidates(const nlohmann::json& block, LocalizationPrompt origin);
    nlohmann::json ask_with_files(llm::Conversation& conversation, std::vector<std::string>& shown);
    ProgramIntent parse_intent(const nlohmann::json& block, int ordinal, IntentProvenance provenance);
    std::string source_context(const std::vector<Location>& regions) const;
    llm::Conversation fresh() const;

    llm::Gateway& gateway_;
    const BugCase& bug_;
    LlmParams params_;
    ReasonOptions options_;
    std::vector<FaultCandidate> candidates_;
    std::optional<llm::Conversation> intent_base_;
    std::vector<std::string> warnings_;
};

}  // namespace intentrepair::agents
