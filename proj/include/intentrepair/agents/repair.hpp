#pragma once

#include <map>
#include <string>
#include <vector>

#include "intentrepair/core/model.hpp"
#include "intentrepair/llm/gateway.hpp"

namespace intentrepair::agents {

struct RepairOptions {
    int context_line_budget = 400;
    int root_causes = 3;
    int max_refinement_rounds = 3;
    std::size_t feedback_bytes = 4096;
};

/// A patch together with the conversation that produced it, so refinement
/// continues the same thread.
struct PatchDraft {
    Patch patch;
    llm::Conversation conversation;
};

std::string patch_slot_id(int intent_ordinal, int cause_rank);

/// Root-cause extraction, one patch per cause, and feedback-driven
/// refinement.
class RepairAgent {
public:
    RepairAgent(llm::Gateway& gateway, const BugCase& bug, LlmParams params, RepairOptions options = {});

    /// Distinct causes ranked 1..m, m <= root_causes. A short answer is
    /// re-prompted once; a still-short list is returned with a warning.
    std::vector<RootCause> identify_root_causes(const ProgramIntent& intent);

    /// Round-0 patch for `cause`. Throws a parse error when the model gives
    /// no usable edits.
    PatchDraft generate_patch(const ProgramIntent& intent, const RootCause& cause);

    /// Next version of the slot, built from execution feedback. The input is
    /// left untouched; its version moves into the new patch's history.
    PatchDraft refine_patch(const PatchDraft& draft, const std::string& feedback);

    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    llm::Conversation cause_conversation(const ProgramIntent& intent);
    std::vector<PatchEdit> parse_edits(const nlohmann::json& block) const;

    llm::Gateway& gateway_;
    const BugCase& bug_;
    LlmParams params_;
    RepairOptions options_;
    std::map<std::string, llm::Conversation> conversations_;
    std::vector<std::string> warnings_;
};

}  // namespace intentrepair::agents
