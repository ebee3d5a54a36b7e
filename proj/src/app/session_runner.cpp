#include "intentrepair/app/session_runner.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <map>

#include "intentrepair/agents/reason.hpp"
#include "intentrepair/agents/repair.hpp"
#include "intentrepair/agents/test.hpp"
#include "intentrepair/app/select.hpp"
#include "intentrepair/error.hpp"
#include "intentrepair/util/text.hpp"
#include "intentrepair/validator/validator.hpp"

namespace intentrepair::app {

namespace {

constexpr std::size_t kCapturedErrorBytes = 2048;

std::string stage_name(SessionState s) {
    switch (s) {
        case SessionState::Created: return "setup";
        case SessionState::Localizing:
        case SessionState::Localized: return "localize";
        case SessionState::InferringIntents:
        case SessionState::IntentsAccepted: return "intents";
        case SessionState::TestGen:
        case SessionState::TestsReady: return "tests";
        case SessionState::Patching: return "repair";
        case SessionState::Validate: return "validate";
        case SessionState::Report:
        case SessionState::Aborted: return "report";
    }
    return "report";
}

bool needs_refinement(Classification c) {
    return c == Classification::CompileError || c == Classification::NonPlausible ||
           c == Classification::LikelyOverfitting;
}

bool passes_as_plausible(Classification c) {
    return c == Classification::Plausible || c == Classification::CorrectExact ||
           c == Classification::CorrectBelieved;
}

std::vector<GeneratedTest> suite_of(const SessionReport& report, const std::string& intent_id) {
    std::vector<GeneratedTest> out;
    const auto* it = report.tests_for(intent_id);
    if (it == nullptr) return out;
    for (const auto& id : it->validation_suite) {
        auto t = std::find_if(it->tests.begin(), it->tests.end(), [&](const GeneratedTest& g) { return g.id == id; });
        if (t != it->tests.end()) out.push_back(*t);
    }
    return out;
}

std::string version_label(const Patch& p) { return p.id + ".r" + std::to_string(p.refinement_round); }

}  // namespace

int selection_quality(Classification c) {
    switch (c) {
        case Classification::CorrectExact: return 6;
        case Classification::CorrectBelieved: return 5;
        case Classification::Plausible: return 4;
        case Classification::LikelyOverfitting: return 3;
        case Classification::NonPlausible: return 2;
        case Classification::CompileError: return 1;
        case Classification::Unvalidated: return 0;
    }
    return 0;
}

int exit_code(const SessionReport& report) {
    switch (report.outcome.status) {
        case OutcomeStatus::Success: return 0;
        case OutcomeStatus::NoPlausiblePatch: return 2;
        default: return 1;
    }
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

SessionReport run_session(const BugCase& input, const RunConfig& config, llm::Gateway& gateway,
                          const exec::ExecEnv& env) {
    const auto started = std::chrono::steady_clock::now();
    SessionReport report;
    report.bug_id = input.id;
    report.config_digest = config.digest();
    report.timing.started_at = iso_timestamp();

    SessionState state = SessionState::Created;
    report.stages.push_back(state);
    auto advance = [&](SessionEvent e) {
        state = session_transition(state, e);
        report.stages.push_back(state);
    };

    BugCase bug = input;
    std::vector<std::string> warnings;
    agents::ReasonAgent reason(gateway, bug, config.llm, {config.context_line_budget});
    agents::TestAgent tester(gateway, bug, config.llm,
                             {config.context_line_budget, config.max_test_repairs,
                              static_cast<std::size_t>(config.feedback_bytes), env.profile().test_extension});
    agents::RepairAgent repairer(gateway, bug, config.llm,
                                 {config.context_line_budget, config.root_causes_per_intent,
                                  config.max_refinement_rounds, static_cast<std::size_t>(config.feedback_bytes)});

    try {
        bug.validate();
        if (bug.error_messages.empty()) {
            auto ws = env.create_workspace(bug, "pristine");
            std::vector<std::string> paths;
            for (const auto& t : bug.failing_tests) paths.push_back(t.path);
            env.compile(ws);
            auto run = env.run_tests(ws, paths);
            if (run.failed.empty()) warnings.push_back("the failing tests pass on the unpatched program");
            else bug.error_messages.push_back(text::tail(run.output, kCapturedErrorBytes));
        }

        // Localization
        advance(SessionEvent::StartLocalize);
        report.fault_candidates = bug.known_faults.empty() ? reason.localize_faults() : reason.known_fault_candidates();
        advance(SessionEvent::FaultsLocated);

        // Intents, scored against intent 1 through its generated tests
        advance(SessionEvent::StartIntentGen);
        auto test_ws = env.create_workspace(bug, "generated-tests");
        std::optional<std::vector<GeneratedTest>> base_tests;
        std::string base_failure;
        std::map<std::pair<int, int>, std::vector<GeneratedTest>> attempt_tests;

        auto compile_all = [&](std::vector<GeneratedTest> tests) {
            for (auto& t : tests)
                if (!t.low_confidence) t = tester.ensure_compilable(std::move(t), env, test_ws);
            return tests;
        };

        auto scorer = [&](const ProgramIntent& first, const ProgramIntent& candidate) -> std::optional<Ratio> {
            if (!base_tests && base_failure.empty()) {
                try {
                    auto tests = tester.generate_initial_tests(first, config.n);
                    tests = compile_all(tester.criticize_assertions(first, std::move(tests)));
                    if (std::none_of(tests.begin(), tests.end(), [](const GeneratedTest& t) { return t.usable(); }))
                        base_failure = "no initial test survived critique and compilation";
                    base_tests = std::move(tests);
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::TestGeneration) throw;
                    base_failure = e.what();
                }
            }
            if (!base_failure.empty()) throw Error(ErrorKind::TestGeneration, base_failure);

            auto& slot = attempt_tests[{candidate.ordinal, candidate.regeneration_attempt}];
            try {
                slot = compile_all(tester.generate_adversarial_tests(*base_tests, first, candidate));
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::TestGeneration) throw;
                warnings.push_back(e.what());
                return std::nullopt;
            }
            auto matrix = agents::build_matrix({{first.id, *base_tests}, {candidate.id, slot}});
            try {
                return agents::adversarial_score(matrix, first.id, candidate.id);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::ScoreUndefined) throw;
                return std::nullopt;
            }
        };

        auto generated = reason.generate_intents(report.fault_candidates, config.k, config.intent_regeneration_cap, scorer);
        report.intents = generated.intents;
        report.scores = generated.attempts;
        advance(SessionEvent::IntentsScored);

        // Validation suites
        advance(SessionEvent::StartTestGen);
        std::vector<std::pair<std::string, std::vector<GeneratedTest>>> columns;
        for (const auto& intent : report.intents) {
            IntentTests set;
            set.intent_id = intent.id;
            if (intent.ordinal == 1) {
                if (base_tests) set.tests = *base_tests;
            } else {
                auto it = attempt_tests.find({intent.ordinal, intent.regeneration_attempt});
                if (it != attempt_tests.end()) set.tests = it->second;
            }
            std::vector<GeneratedTest> usable;
            for (const auto& t : set.tests)
                if (t.usable()) usable.push_back(t);
            if (!usable.empty()) {
                auto ranked = tester.rank_tests(intent, std::move(usable));
                for (auto& t : set.tests) {
                    auto r = std::find_if(ranked.begin(), ranked.end(), [&](const GeneratedTest& g) { return g.id == t.id; });
                    if (r != ranked.end()) t.confidence_rank = r->confidence_rank;
                }
                for (const auto& kept : agents::prioritize_tests(ranked, config.keep_fraction))
                    set.validation_suite.push_back(kept.id);
            }
            columns.push_back({intent.id, set.tests});
            report.tests.push_back(std::move(set));
        }
        report.matrix = agents::build_matrix(columns);
        advance(SessionEvent::TestsPrioritized);

        // Patches, refined against original and adversarial failures
        advance(SessionEvent::StartRepair);
        for (const auto& intent : report.intents) {
            const auto suite = suite_of(report, intent.id);
            std::vector<RootCause> causes;
            try {
                causes = repairer.identify_root_causes(intent);
            } catch (const ParseError& e) {
                warnings.push_back(intent.id + ": root causes unavailable: " + e.what());
                continue;
            }
            report.root_causes.insert(report.root_causes.end(), causes.begin(), causes.end());

            for (const auto& cause : causes) {
                agents::PatchDraft draft;
                try {
                    draft = repairer.generate_patch(intent, cause);
                } catch (const ParseError& e) {
                    warnings.push_back(agents::patch_slot_id(intent.ordinal, cause.rank) + ": patch generation failed: " + e.what());
                    continue;
                }
                try {
                    auto evaluate = [&] {
                        auto ev = validator::classify_patch(draft.patch.edits, bug, env, suite, version_label(draft.patch));
                        draft.patch.classification = ev.classification;
                        draft.patch.validation = ev.summary;
                        return ev;
                    };
                    auto ev = evaluate();
                    while (needs_refinement(draft.patch.classification) &&
                           draft.patch.refinement_round < config.max_refinement_rounds) {
                        try {
                            draft = repairer.refine_patch(draft, ev.feedback);
                        } catch (const ParseError& e) {
                            warnings.push_back(draft.patch.id + ": refinement unreadable: " + e.what());
                            break;
                        }
                        ev = evaluate();
                    }
                } catch (const Error& e) {
                    if (e.kind() == ErrorKind::BudgetExhausted) report.patches.push_back(draft.patch);
                    throw;
                }
                report.patches.push_back(draft.patch);
            }
        }
        advance(SessionEvent::PatchesGenerated);

        // A plausible patch that breaks the suite of an intent confirmed by a
        // reference match is overfitting too.
        for (const auto& confirmed : report.intents) {
            const bool owns_exact = std::any_of(report.patches.begin(), report.patches.end(), [&](const Patch& p) {
                return p.intent_id == confirmed.id && p.classification == Classification::CorrectExact;
            });
            if (!owns_exact) continue;
            const auto suite = suite_of(report, confirmed.id);
            if (suite.empty()) continue;
            for (auto& p : report.patches) {
                if (p.intent_id == confirmed.id || p.classification != Classification::Plausible) continue;
                try {
                    auto failed = validator::failing_tests(p.edits, bug, env, suite, version_label(p) + "-confirm");
                    if (!failed.empty()) {
                        p.classification = Classification::LikelyOverfitting;
                        p.validation.failed_confirmed_tests = failed;
                    }
                } catch (const Error& e) {
                    if (e.kind() == ErrorKind::BudgetExhausted) throw;
                    warnings.push_back(p.id + ": cross-check against " + confirmed.id + " failed: " + e.what());
                }
            }
        }
        advance(SessionEvent::AllPatchesClassified);

        const bool found = std::any_of(report.patches.begin(), report.patches.end(),
                                       [](const Patch& p) { return passes_as_plausible(p.classification); });
        report.outcome.status = found ? OutcomeStatus::Success : OutcomeStatus::NoPlausiblePatch;
    } catch (const Error& e) {
        report.outcome.status = e.kind() == ErrorKind::BudgetExhausted ? OutcomeStatus::BudgetExhausted
                                                                         : OutcomeStatus::Error;
        report.outcome.failure_stage = stage_name(state);
        report.outcome.message = e.what();
        if (state != SessionState::Aborted && state != SessionState::Report) advance(SessionEvent::Abort);
    } catch (const std::exception& e) {
        report.outcome.status = OutcomeStatus::Error;
        report.outcome.failure_stage = stage_name(state);
        report.outcome.message = e.what();
        if (state != SessionState::Aborted && state != SessionState::Report) advance(SessionEvent::Abort);
    }

    if (!report.intents.empty()) report.selected_intent = auto_select(report);
    for (const auto* source : {&reason.warnings(), &tester.warnings(), &repairer.warnings()})
        warnings.insert(warnings.end(), source->begin(), source->end());
    report.warnings = std::move(warnings);
    report.tokens = gateway.tokens();
    report.timing.duration_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
    return report;
}

}  // namespace intentrepair::app
