#include "intentrepair/agents/reason.hpp"

#include <algorithm>
#include <sstream>

#include "intentrepair/agents/context.hpp"
#include "intentrepair/agents/prompts.hpp"
#include "intentrepair/core/json_io.hpp"
#include "intentrepair/error.hpp"
#include "intentrepair/util/text.hpp"

namespace intentrepair::agents {

namespace {

constexpr std::string_view kAgent = "reason";

constexpr std::string_view kFaultsExample =
    R"({"candidates": [{"kind": "function", "path": "src/example.py", "start_line": 3, "end_line": 9, "snippet": "def f(x):"}], "request_files": []})";
constexpr std::string_view kIntentExample =
    R"({"description": "Return the number of ...", "faulty_statements": [{"path": "src/example.py", "start_line": 5, "end_line": 5, "snippet": "if x > 0:"}]})";

std::string faults_format() {
    return llm::format_instruction("faults", kFaultsExample) +
           "\nkind is one of function, constructor, variable-definition, other-class-statement. Line numbers refer "
           "to the numbered listings. List in request_files the paths of any project files you need to see.";
}

std::string intent_format() { return llm::format_instruction("intent", kIntentExample); }

int json_int(const nlohmann::json& j, const char* key, int fallback) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number_integer()) return fallback;
    return it->get<int>();
}

std::string json_str(const nlohmann::json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) return {};
    return it->get<std::string>();
}

}  // namespace

ReasonAgent::ReasonAgent(llm::Gateway& gateway, const BugCase& bug, LlmParams params, ReasonOptions options)
    : gateway_(gateway), bug_(bug), params_(std::move(params)), options_(options) {}

llm::Conversation ReasonAgent::fresh() const {
    llm::Conversation c;
    c.params = params_;
    c.system(std::string(prompts::kReasonSystem));
    return c;
}

std::vector<FaultCandidate> ReasonAgent::parse_candidates(const nlohmann::json& block, LocalizationPrompt origin) {
    std::vector<FaultCandidate> out;
    auto it = block.find("candidates");
    if (it == block.end() || !it->is_array()) return out;
    for (const auto& c : *it) {
        if (!c.is_object()) continue;
        const auto path = json_str(c, "path");
        const auto* file = bug_.find_source(path);
        if (file == nullptr) {
            warnings_.push_back("localization: dropped candidate in unknown file '" + path + "'");
            continue;
        }
        const int total = static_cast<int>(text::split_lines(file->text).size());
        int start = std::clamp(json_int(c, "start_line", 1), 1, std::max(1, total));
        int end = std::clamp(json_int(c, "end_line", start), start, std::max(start, total));
        FaultCandidate fc;
        try {
            fc.kind = parse_fault_kind(json_str(c, "kind"));
        } catch (const Error&) {
            fc.kind = origin == LocalizationPrompt::P1 ? FaultKind::Function : FaultKind::OtherClassStatement;
        }
        fc.location = {path, start, end};
        fc.snippet = region_text(*file, fc.location);
        fc.origin_prompt = origin;
        out.push_back(std::move(fc));
    }
    return out;
}

nlohmann::json ReasonAgent::ask_with_files(llm::Conversation& conversation, std::vector<std::string>& shown) {
    auto block = llm::complete_structured(gateway_, conversation, "faults", kAgent);
    auto req = block.find("request_files");
    if (req == block.end() || !req->is_array() || req->empty()) return block;

    std::ostringstream supplied;
    for (const auto& p : *req) {
        if (!p.is_string()) continue;
        const auto path = p.get<std::string>();
        if (std::find(shown.begin(), shown.end(), path) != shown.end()) continue;
        const auto* file = bug_.find_source(path);
        if (file == nullptr) {
            warnings_.push_back("localization: requested file '" + path + "' is not part of the bug");
            continue;
        }
        shown.push_back(path);
        supplied << "File: " << path << "\n" << render_file(*file, options_.context_line_budget) << "\n";
    }
    if (supplied.str().empty()) return block;
    conversation.user("Here are the requested files.\n\n" + supplied.str() +
                      "Answer the previous question again with this additional context." + faults_format());
    return llm::complete_structured(gateway_, conversation, "faults", kAgent);
}

std::vector<FaultCandidate> ReasonAgent::localize_faults() {
    const auto& focus = bug_.focus();
    std::vector<std::string> shown{focus.path};

    std::ostringstream ctx;
    ctx << "The following class is presumed buggy.\n\nFile: " << focus.path << "\n"
        << render_file(focus, options_.context_line_budget) << "\n";
    ctx << "Failing tests:\n" << render_failing_tests(bug_) << "\n";
    if (!bug_.error_messages.empty()) ctx << "Error messages:\n" << render_error_messages(bug_) << "\n";
    std::vector<std::string> others;
    for (const auto& f : bug_.buggy_sources)
        if (f.path != focus.path) others.push_back(f.path);
    if (!others.empty()) {
        ctx << "Other project files you may request by path:\n";
        for (const auto& p : others) ctx << "- " << p << "\n";
        ctx << "\n";
    }

    auto conversation = fresh();
    std::vector<FaultCandidate> functions;
    std::vector<FaultCandidate> alternatives;
    auto is_new = [&](const FaultCandidate& c) {
        auto same = [&](const FaultCandidate& o) { return o.location == c.location; };
        return std::none_of(functions.begin(), functions.end(), same) &&
               std::none_of(alternatives.begin(), alternatives.end(), same);
    };
    int alternative_slots = kLocalizationTarget - kFunctionCandidates;

    try {
        conversation.user(ctx.str() + std::string(prompts::kLocateFunctions) + faults_format());
        for (auto& c : parse_candidates(ask_with_files(conversation, shown), LocalizationPrompt::P1)) {
            if (static_cast<int>(functions.size()) < kFunctionCandidates && is_new(c)) functions.push_back(c);
        }
        // Function slots the class cannot fill go to finer-grained answers.
        alternative_slots = kLocalizationTarget - static_cast<int>(functions.size());

        auto collect = [&](const nlohmann::json& block, LocalizationPrompt origin) {
            for (auto& c : parse_candidates(block, origin)) {
                if (static_cast<int>(alternatives.size()) < alternative_slots && is_new(c)) alternatives.push_back(c);
            }
        };

        conversation.user(std::string(prompts::kLocateStatements) + faults_format());
        collect(ask_with_files(conversation, shown), LocalizationPrompt::P2);
        conversation.user(std::string(prompts::kLocateAlternatives) + faults_format());
        collect(ask_with_files(conversation, shown), LocalizationPrompt::P3);

        if (static_cast<int>(alternatives.size()) < alternative_slots) {
            conversation.user(std::string(prompts::kLocateAlternatives) +
                              " Name locations that differ from every location listed so far." + faults_format());
            collect(ask_with_files(conversation, shown), LocalizationPrompt::P3);
        }
    } catch (const ParseError& e) {
        throw Error(ErrorKind::Localization, std::string("fault localization failed: ") + e.what());
    }

    std::vector<FaultCandidate> out = functions;
    out.insert(out.end(), alternatives.begin(), alternatives.end());
    if (out.empty()) throw Error(ErrorKind::Localization, "fault localization produced no usable candidates");
    if (static_cast<int>(out.size()) < kLocalizationTarget)
        warnings_.push_back("localization: only " + std::to_string(out.size()) + " distinct candidates found");
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = static_cast<int>(i) + 1;
    candidates_ = out;
    return out;
}

std::vector<FaultCandidate> ReasonAgent::known_fault_candidates() const {
    std::vector<FaultCandidate> out;
    for (const auto& fault : bug_.known_faults) {
        const auto* file = bug_.find_source(fault.path);
        if (file == nullptr) throw Error(ErrorKind::InvalidInput, "known fault in unknown file '" + fault.path + "'");
        FaultCandidate c;
        c.kind = FaultKind::Function;
        c.location = enclosing_function(*file, fault);
        if (std::any_of(out.begin(), out.end(), [&](const FaultCandidate& o) { return o.location == c.location; }))
            continue;
        c.snippet = region_text(*file, c.location);
        c.rank = static_cast<int>(out.size()) + 1;
        out.push_back(std::move(c));
    }
    return out;
}

std::string ReasonAgent::source_context(const std::vector<Location>& regions) const {
    std::ostringstream out;
    std::vector<std::string> files;
    for (const auto& r : regions)
        if (std::find(files.begin(), files.end(), r.path) == files.end()) files.push_back(r.path);
    for (const auto& path : files) {
        const auto* file = bug_.find_source(path);
        if (file == nullptr) continue;
        out << "File: " << path << "\n" << render_file(*file, options_.context_line_budget, regions) << "\n";
    }
    return out.str();
}

ProgramIntent ReasonAgent::parse_intent(const nlohmann::json& block, int ordinal, IntentProvenance provenance) {
    ProgramIntent intent;
    intent.ordinal = ordinal;
    intent.id = intent_id_for(ordinal);
    intent.provenance = provenance;
    intent.description = text::trim(json_str(block, "description"));
    if (intent.description.empty())
        throw Error(ErrorKind::IntentGeneration, "intent " + std::to_string(ordinal) + " has an empty description");

    auto it = block.find("faulty_statements");
    if (it != block.end() && it->is_array()) {
        for (const auto& s : *it) {
            if (!s.is_object()) continue;
            Location loc{json_str(s, "path"), json_int(s, "start_line", 0), json_int(s, "end_line", 0)};
            if (loc.end_line < loc.start_line) loc.end_line = loc.start_line;
            const auto* file = bug_.find_source(loc.path);
            const bool inside = std::any_of(candidates_.begin(), candidates_.end(),
                                            [&](const FaultCandidate& c) { return c.location.contains(loc); });
            if (file == nullptr || !inside) {
                warnings_.push_back("intent " + std::to_string(ordinal) + ": dropped faulty statement " + loc.path +
                                    ":" + std::to_string(loc.start_line) + " outside the candidate regions");
                continue;
            }
            intent.faulty_statements.push_back({loc, region_text(*file, loc)});
        }
    }
    if (intent.faulty_statements.empty() && !candidates_.empty()) {
        warnings_.push_back("intent " + std::to_string(ordinal) +
                            ": no usable faulty statements, using the top candidate region");
        intent.faulty_statements.push_back({candidates_.front().location, candidates_.front().snippet});
    }
    return intent;
}

ProgramIntent ReasonAgent::infer_initial_intent(const std::vector<FaultCandidate>& candidates) {
    if (candidates.empty()) throw Error(ErrorKind::IntentGeneration, "intent inference needs fault candidates");
    candidates_ = candidates;

    std::vector<Location> regions;
    std::ostringstream listing;
    for (const auto& c : candidates) {
        regions.push_back(c.location);
        listing << "[" << c.rank << "] " << to_string(c.kind) << " at " << c.location.path << " lines "
                << c.location.start_line << "-" << c.location.end_line << "\n";
    }

    std::ostringstream ctx;
    ctx << "Buggy code:\n" << source_context(regions) << "\n";
    ctx << "Suspicious locations, most likely first:\n" << listing.str() << "\n";
    ctx << "Failing tests:\n" << render_failing_tests(bug_) << "\n";
    if (!bug_.error_messages.empty()) ctx << "Error messages:\n" << render_error_messages(bug_) << "\n";

    auto conversation = fresh();
    conversation.user(ctx.str() + std::string(prompts::kInitialIntent) + intent_format());
    nlohmann::json block;
    try {
        block = llm::complete_structured(gateway_, conversation, "intent", kAgent);
    } catch (const ParseError& e) {
        throw Error(ErrorKind::IntentGeneration, std::string("initial intent: ") + e.what());
    }
    auto intent = parse_intent(block, 1, IntentProvenance::Initial);
    intent.accepted = true;
    intent_base_ = std::move(conversation);
    return intent;
}

ProgramIntent ReasonAgent::infer_adversarial_intent(const std::vector<ProgramIntent>& prior,
                                                    const std::vector<IntentAttempt>& rejected) {
    if (!intent_base_ || prior.empty())
        throw Error(ErrorKind::IntentGeneration, "adversarial intents need the initial intent first");

    std::ostringstream ctx;
    ctx << "Intents inferred so far:\n";
    for (const auto& p : prior) ctx << p.ordinal << ". " << p.description << "\n";
    if (!rejected.empty()) {
        ctx << "\nRejected because their tests agree too often with intent 1:\n";
        for (const auto& r : rejected) {
            ctx << "- " << r.description;
            if (r.score) ctx << " (adversarial score " << r.score->str() << ", needed " << r.threshold.str() << ")";
            ctx << "\n";
        }
    }
    ctx << "\n" << prompts::kAdversarialIntent
        << " Describe one alternative intent that differs from every intent listed above and locate the fault "
           "statements under it.";

    auto conversation = *intent_base_;
    conversation.user(ctx.str() + intent_format());
    const int ordinal = static_cast<int>(prior.size()) + 1;
    try {
        auto block = llm::complete_structured(gateway_, conversation, "intent", kAgent);
        return parse_intent(block, ordinal, IntentProvenance::Adversarial);
    } catch (const ParseError& e) {
        throw Error(ErrorKind::IntentGeneration, "intent " + std::to_string(ordinal) + ": " + e.what());
    }
}

IntentGeneration ReasonAgent::generate_intents(const std::vector<FaultCandidate>& candidates, int k, int attempt_cap,
                                               const Scorer& scorer) {
    const Ratio threshold = adversarial_threshold(k);
    if (attempt_cap < 1) throw Error(ErrorKind::InvalidConfiguration, "intent regeneration cap must be at least 1");

    IntentGeneration out;
    out.intents.push_back(infer_initial_intent(candidates));
    bool filtering = static_cast<bool>(scorer);

    for (int ordinal = 2; ordinal <= k; ++ordinal) {
        std::vector<ProgramIntent> tried;
        std::vector<IntentAttempt> rejected;
        std::optional<std::size_t> chosen;
        const int cap = filtering ? attempt_cap : 1;
        for (int attempt = 0; attempt < cap; ++attempt) {
            auto intent = infer_adversarial_intent(out.intents, rejected);
            intent.ordinal = ordinal;
            intent.id = intent_id_for(ordinal);
            intent.regeneration_attempt = attempt;

            IntentAttempt record;
            record.ordinal = ordinal;
            record.attempt = attempt;
            record.description = intent.description;
            record.threshold = threshold;
            if (filtering) {
                try {
                    record.score = scorer(out.intents.front(), intent);
                    record.accepted = record.score && *record.score >= threshold;
                    if (!record.score) record.note = "score undefined";
                    else if (!record.accepted) record.note = "below threshold";
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::TestGeneration) throw;
                    filtering = false;
                    warnings_.push_back(std::string("adversarial filtering disabled: ") + e.what());
                }
            }
            if (!filtering) record.note = "adversarial filtering disabled";
            intent.adversarial_score_vs_first = record.score;
            intent.accepted = record.accepted;
            out.attempts.push_back(record);
            tried.push_back(std::move(intent));
            if (record.accepted || !filtering) {
                chosen = tried.size() - 1;
                break;
            }
            rejected.push_back(record);
        }

        if (!chosen) {
            chosen = 0;
            for (std::size_t i = 0; i < tried.size(); ++i) {
                const auto& best = tried[*chosen].adversarial_score_vs_first;
                const auto& cur = tried[i].adversarial_score_vs_first;
                if (cur && (!best || *cur > *best)) chosen = i;
            }
            if (filtering)
                warnings_.push_back("intent " + std::to_string(ordinal) + ": no attempt reached the threshold " +
                                    threshold.str() + "; kept attempt " + std::to_string(*chosen));
        }
        out.intents.push_back(tried[*chosen]);
    }
    return out;
}

}  // namespace intentrepair::agents
