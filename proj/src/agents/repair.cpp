#include "intentrepair/agents/repair.hpp"

#include <algorithm>
#include <sstream>

#include "intentrepair/agents/context.hpp"
#include "intentrepair/agents/prompts.hpp"
#include "intentrepair/error.hpp"
#include "intentrepair/util/text.hpp"

namespace intentrepair::agents {

namespace {

constexpr std::string_view kAgent = "repair";

constexpr std::string_view kCausesExample = R"({"causes": ["Array Index Errors", "Null Checks", "Type Casting"]})";
constexpr std::string_view kPatchExample =
    R"({"edits": [{"path": "src/example.py", "start_line": 5, "end_line": 5, "original": "    if x > 0:", "replacement": "    if x >= 0:"}]})";

std::string patch_format() {
    return llm::format_instruction("patch", kPatchExample) +
           "\nEach edit replaces lines start_line..end_line. original must repeat those lines exactly as listed, "
           "without line numbers; replacement is the new text for them. Line numbers always refer to the original "
           "listing above.";
}

std::string version_id(const std::string& slot, int round) { return slot + ".r" + std::to_string(round); }

}  // namespace

std::string patch_slot_id(int intent_ordinal, int cause_rank) {
    return "patch-" + std::to_string(intent_ordinal) + "-" + std::to_string(cause_rank);
}

RepairAgent::RepairAgent(llm::Gateway& gateway, const BugCase& bug, LlmParams params, RepairOptions options)
    : gateway_(gateway), bug_(bug), params_(std::move(params)), options_(options) {}

llm::Conversation RepairAgent::cause_conversation(const ProgramIntent& intent) {
    std::vector<Location> regions;
    std::ostringstream statements;
    for (const auto& s : intent.faulty_statements) {
        regions.push_back(s.location);
        statements << s.location.path << " lines " << s.location.start_line << "-" << s.location.end_line << ":\n"
                   << s.snippet << (s.snippet.ends_with('\n') ? "" : "\n");
    }

    std::ostringstream ctx;
    ctx << "Program intent: " << intent.description << "\n\nFaulty statements:\n" << statements.str() << "\n";
    std::vector<std::string> files;
    for (const auto& r : regions)
        if (std::find(files.begin(), files.end(), r.path) == files.end()) files.push_back(r.path);
    if (files.empty()) files.push_back(bug_.focus().path);
    for (const auto& path : files) {
        if (const auto* f = bug_.find_source(path))
            ctx << "File: " << path << "\n" << render_file(*f, options_.context_line_budget, regions) << "\n";
    }
    ctx << "Failing tests:\n" << render_failing_tests(bug_) << "\n";
    if (!bug_.error_messages.empty()) ctx << "Error messages:\n" << render_error_messages(bug_) << "\n";

    llm::Conversation c;
    c.params = params_;
    c.system(std::string(prompts::kRepairSystem));
    c.user(ctx.str() + prompts::root_causes(options_.root_causes) + llm::format_instruction("root_causes", kCausesExample));
    return c;
}

std::vector<RootCause> RepairAgent::identify_root_causes(const ProgramIntent& intent) {
    if (intent.faulty_statements.empty())
        throw Error(ErrorKind::InvalidInput, intent.id + " has no faulty statements to repair");
    const auto want = static_cast<std::size_t>(options_.root_causes);

    auto conversation = cause_conversation(intent);
    std::vector<std::string> labels;
    auto absorb = [&](const nlohmann::json& block) {
        auto it = block.find("causes");
        if (it == block.end() || !it->is_array()) return;
        for (const auto& c : *it) {
            if (!c.is_string() || labels.size() >= want) continue;
            auto label = text::trim(c.get<std::string>());
            auto key = text::collapse_whitespace(label);
            std::transform(key.begin(), key.end(), key.begin(), [](unsigned char ch) { return std::tolower(ch); });
            const bool dup = std::any_of(labels.begin(), labels.end(), [&](const std::string& l) {
                auto k = text::collapse_whitespace(l);
                std::transform(k.begin(), k.end(), k.begin(), [](unsigned char ch) { return std::tolower(ch); });
                return k == key;
            });
            if (!label.empty() && !dup) labels.push_back(label);
        }
    };

    absorb(llm::complete_structured(gateway_, conversation, "root_causes", kAgent));
    if (labels.size() < want) {
        conversation.user("Give " + std::to_string(want) + " distinct root causes; only " +
                          std::to_string(labels.size()) + " distinct ones were given." +
                          llm::format_instruction("root_causes", kCausesExample));
        absorb(llm::complete_structured(gateway_, conversation, "root_causes", kAgent));
        if (labels.size() < want)
            warnings_.push_back(intent.id + ": only " + std::to_string(labels.size()) + " distinct root causes");
    }
    if (labels.empty()) throw ParseError("no root causes for " + intent.id, {});

    std::vector<RootCause> out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int rank = static_cast<int>(i) + 1;
        out.push_back({"rc-" + std::to_string(intent.ordinal) + "-" + std::to_string(rank), intent.id, labels[i], rank});
    }
    conversations_[intent.id] = std::move(conversation);
    return out;
}

std::vector<PatchEdit> RepairAgent::parse_edits(const nlohmann::json& block) const {
    std::vector<PatchEdit> out;
    auto it = block.find("edits");
    if (it == block.end() || !it->is_array()) return out;
    for (const auto& e : *it) {
        if (!e.is_object()) continue;
        PatchEdit edit;
        edit.path = e.value("path", std::string{});
        edit.start_line = e.value("start_line", 0);
        edit.end_line = e.value("end_line", edit.start_line);
        edit.original = e.value("original", std::string{});
        edit.replacement = e.value("replacement", std::string{});
        if (edit.path.empty() || edit.original.empty()) continue;
        out.push_back(std::move(edit));
    }
    return out;
}

PatchDraft RepairAgent::generate_patch(const ProgramIntent& intent, const RootCause& cause) {
    if (cause.intent_id != intent.id)
        throw Error(ErrorKind::InvalidInput, cause.id + " does not belong to " + intent.id);
    auto found = conversations_.find(intent.id);
    PatchDraft draft;
    draft.conversation = found != conversations_.end() ? found->second : cause_conversation(intent);
    draft.conversation.user(prompts::patch_for_cause(cause.label) + patch_format());

    auto block = llm::complete_structured(gateway_, draft.conversation, "patch", kAgent);
    auto edits = parse_edits(block);
    if (edits.empty()) throw ParseError("patch for " + cause.id + " has no usable edits", block.dump());

    auto& p = draft.patch;
    p.id = patch_slot_id(intent.ordinal, cause.rank);
    p.intent_id = intent.id;
    p.root_cause_id = cause.id;
    p.edits = std::move(edits);
    p.refinement_round = 0;
    return draft;
}

PatchDraft RepairAgent::refine_patch(const PatchDraft& draft, const std::string& feedback) {
    if (draft.patch.refinement_round >= options_.max_refinement_rounds)
        throw Error(ErrorKind::Protocol, draft.patch.id + " already used all refinement rounds");

    PatchDraft next;
    next.conversation = draft.conversation;
    next.conversation.user(std::string(prompts::kRefine) + "\n\n" + text::tail(feedback, options_.feedback_bytes) +
                           "\nAnswer with the complete patch against the original listing." + patch_format());
    auto block = llm::complete_structured(gateway_, next.conversation, "patch", kAgent);
    auto edits = parse_edits(block);
    if (edits.empty()) throw ParseError("refinement of " + draft.patch.id + " has no usable edits", block.dump());

    const auto& prev = draft.patch;
    next.patch = prev;
    next.patch.history.push_back(PatchVersion{version_id(prev.id, prev.refinement_round), prev.refinement_round,
                                              prev.edits, prev.classification, prev.validation});
    next.patch.edits = std::move(edits);
    next.patch.refinement_round = prev.refinement_round + 1;
    next.patch.classification = Classification::Unvalidated;
    next.patch.validation = {};
    next.patch.verdict.reset();
    return next;
}

}  // namespace intentrepair::agents
