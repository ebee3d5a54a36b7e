// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "intentrepair/agents/reason.hpp"
#include "intentrepair/agents/repair.hpp"
#include "intentrepair/agents/test.hpp"
#include "intentrepair/app/bug_loader.hpp"
#include "intentrepair/app/config.hpp"
#include "intentrepair/app/pipeline.hpp"
#include "intentrepair/app/session_runner.hpp"
#include "intentrepair/core/json_io.hpp"
#include "intentrepair/core/session.hpp"
#include "intentrepair/error.hpp"
#include "intentrepair/exec/environment.hpp"
#include "intentrepair/exec/subprocess.hpp"
#include "intentrepair/exec/toolchain.hpp"
#include "intentrepair/llm/backends.hpp"
#include "intentrepair/llm/gateway.hpp"
#include "intentrepair/llm/transcript.hpp"
#include "intentrepair/util/text.hpp"
#include "intentrepair/validator/validator.hpp"
#include "support/support.hpp"

using namespace intentrepair;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
    std::vector<std::string> failures;

    void expect(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            failures.push_back(what);
        }
    }
};

using Check = std::function<void(Outcome&)>;

fs::path corpus(const std::string& id) { return support::corpus_dir() / id; }

exec::ProcessResult run_repair(const std::string& args, int timeout_seconds = 120) {
    const auto cmd = exec::shell_quote(support::repair_binary().string()) + " " + args;
    return exec::run_shell(cmd, fs::current_path().string(), std::chrono::seconds(timeout_seconds),
                           {"PATH", "HOME", "LANG", "LC_ALL", "TMPDIR"});
}

std::string q(const fs::path& p) { return exec::shell_quote(p.string()); }

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(text::read_file(p.string())); }

bool ratio_is(const nlohmann::json& score, std::int64_t num, std::int64_t den) {
    if (!score.is_object()) return false;
    return Ratio{score["numerator"].get<std::int64_t>(), score["denominator"].get<std::int64_t>()} == Ratio{num, den};
}

// 1. Golden fixture through the CLI in replay mode.
void golden_fixture(Outcome& o) {
    support::TempDir out("golden");
    const auto started = std::chrono::steady_clock::now();
    const auto r = run_repair("run --bug " + q(corpus("count_upper")) + " --config " +
                                  q(support::fixture_dir() / "config" / "fixture.json") + " --backend replay --out " +
                                  q(out.path()),
                              30);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    o.expect(!r.timed_out && r.exit_code == 0, "repair run exited " + std::to_string(r.exit_code));
    o.expect(seconds < 30.0, "runtime " + std::to_string(seconds) + " s");
    const auto report = read_json(out.path() / "report.json");

    const auto& intents = report["intents"];
    o.expect(intents.size() == 3, "expected 3 intents");
    if (intents.size() == 3) {
        o.expect(ratio_is(intents[1]["adversarial_score_vs_first"], 1, 2), "intent 2 score is not 1/2");
        o.expect(ratio_is(intents[2]["adversarial_score_vs_first"], 3, 4), "intent 3 score is not 3/4");
        const Ratio threshold = adversarial_threshold(3);
        for (int i = 1; i < 3; ++i) {
            const auto& s = intents[static_cast<std::size_t>(i)]["adversarial_score_vs_first"];
            const Ratio score{s["numerator"].get<std::int64_t>(), s["denominator"].get<std::int64_t>()};
            o.expect(score >= threshold && intents[static_cast<std::size_t>(i)]["accepted"] == true,
                     "intent " + std::to_string(i + 1) + " not accepted at 1/3");
        }
    }
    std::map<std::string, std::string> by_intent;
    for (const auto& p : report["patches"]) by_intent[p["intent_id"]] = p["classification"];
    o.expect(report["patches"].size() == 3, "expected 3 patches");
    o.expect(by_intent["intent-1"] == "likely-overfitting", "intent-1 patch is " + by_intent["intent-1"]);
    o.expect(by_intent["intent-2"] == "correct-exact", "intent-2 patch is " + by_intent["intent-2"]);
    o.expect(by_intent["intent-3"] == "non-plausible", "intent-3 patch is " + by_intent["intent-3"]);
    o.detail << "scores 1/2 and 3/4 >= 1/3; patches {likely-overfitting, correct-exact, non-plausible}; "
             << static_cast<int>(seconds * 1000) << " ms, replay backend";
}

// 2. Score formula against a brute-force oracle.
void formula_suite(Outcome& o) {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> rows_dist(1, 16);
    std::uniform_int_distribution<int> value(0, 2);
    std::bernoulli_distribution missing(0.1);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        AdversarialTestMatrix m;
        const int rows = rows_dist(rng);
        for (int r = 0; r < rows; ++r) m.input_keys.push_back(std::to_string(r));
        for (const char* id : {"a", "b"}) {
            auto& col = m.columns[id];
            for (int r = 0; r < rows; ++r)
                col.push_back(missing(rng) ? std::nullopt : std::optional<std::string>(std::to_string(value(rng))));
        }
        const auto [different, compared] = support::brute_force_score(m.columns["a"], m.columns["b"]);
        if (compared == 0) {
            bool threw = false;
            try {
                agents::adversarial_score(m, "a", "b");
            } catch (const Error& e) {
                threw = e.kind() == ErrorKind::ScoreUndefined;
            }
            o.expect(threw, "undefined score did not throw");
            continue;
        }
        const auto s = agents::adversarial_score(m, "a", "b");
        o.expect(s.numerator == different && s.denominator == compared, "trial " + std::to_string(trial) + " mismatch");
        ++checked;
    }
    AdversarialTestMatrix m;
    m.input_keys = {"x", "y"};
    m.columns["a"] = {std::string("1"), std::string("2")};
    m.columns["same"] = m.columns["a"];
    m.columns["other"] = {std::string("3"), std::string("4")};
    o.expect(agents::adversarial_score(m, "a", "same").value() == 0.0, "identical columns are not 0.0");
    o.expect(agents::adversarial_score(m, "a", "other").value() == 1.0, "disjoint columns are not 1.0");
    for (int k = 2; k <= 10; ++k) {
        const auto t = adversarial_threshold(k);
        o.expect(t.numerator == 1 && t.denominator == k, "threshold(" + std::to_string(k) + ") != 1/k");
    }
    o.detail << checked << " defined random matrices match brute force; extremes 0.0/1.0; 1/k for k=2..10";
}

std::vector<FaultCandidate> golden_candidates(const BugCase& bug) {
    llm::MockBackend mock(llm::MockBackend::load_script((corpus("count_upper") / "mock.script").string()));
    llm::Gateway g(mock);
    agents::ReasonAgent agent(g, bug, {});
    return agent.localize_faults();
}

std::string intent_reply(const std::string& desc) {
    return support::fenced("intent", nlohmann::json{{"description", desc},
                                                    {"faulty_statements",
                                                     {{{"path", "src/count_upper.py"}, {"start_line", 5}, {"end_line", 5}}}}}
                                         .dump());
}

int prompts_containing(const llm::Gateway& g, std::string_view needle) {
    int n = 0;
    for (const auto& e : g.entries())
        if (text::contains(e.request.last_user(), needle)) ++n;
    return n;
}

// Scores intents by comparing scripted oracle columns, as the session does.
agents::ReasonAgent::Scorer column_scorer(std::map<std::string, std::vector<std::string>> columns) {
    return [columns](const ProgramIntent& first, const ProgramIntent& candidate) -> std::optional<Ratio> {
        std::vector<std::pair<std::string, std::vector<GeneratedTest>>> cols;
        for (const auto* intent : {&first, &candidate}) {
            std::vector<GeneratedTest> tests;
            const auto& outputs = columns.at(intent->description);
            for (std::size_t i = 0; i < outputs.size(); ++i) {
                GeneratedTest t;
                t.index = static_cast<int>(i) + 1;
                t.input_key = "input " + std::to_string(i);
                t.expected_output = outputs[i];
                t.compile_status = CompileStatus::Compiled;
                tests.push_back(t);
            }
            cols.emplace_back(intent->description, tests);
        }
        return agents::adversarial_score(agents::build_matrix(cols), first.description, candidate.description);
    };
}

// 3. Regeneration gate at k=3 (threshold 1/3).
void regeneration_gate(Outcome& o) {
    const auto bug = app::load_bug(corpus("count_upper").string());
    const auto candidates = golden_candidates(bug);
    const std::map<std::string, std::vector<std::string>> columns{
        {"first", {"3", "1", "1", "3"}},
        {"weak", {"3", "1", "1", "2"}},    // 1/4
        {"strong", {"3", "1", "0", "2"}},  // 2/4
        {"third", {"0", "0", "0", "0"}},   // 4/4
        {"copy", {"3", "1", "1", "3"}},    // 0/4
    };
    {
        llm::MockBackend mock;
        mock.add(support::rule({"can you reason"}, intent_reply("first")));
        mock.add(support::rule({"What if the previous intents", "weak (adversarial score 1/4, needed 1/3)"},
                               intent_reply("strong")));
        mock.add(support::rule({"What if the previous intents", "2. strong"}, intent_reply("third")));
        mock.add(support::rule({"What if the previous intents"}, intent_reply("weak")));
        llm::Gateway g(mock);
        agents::ReasonAgent agent(g, bug, {});
        const auto out = agent.generate_intents(candidates, 3, 3, column_scorer(columns));
        int second_attempts = 0;
        for (const auto& a : out.attempts)
            if (a.ordinal == 2) ++second_attempts;
        o.expect(second_attempts == 2, "second intent made " + std::to_string(second_attempts) + " attempts");
        o.expect(!out.attempts.empty() && out.attempts[0].score == Ratio{1, 4} && !out.attempts[0].accepted,
                 "first attempt was not rejected at 1/4");
        o.expect(out.intents.size() == 3 && out.intents[1].description == "strong" && out.intents[1].accepted &&
                     out.intents[1].regeneration_attempt == 1,
                 "regenerated intent not accepted");
        o.expect(prompts_containing(g, "What if the previous intents") == 3, "adversarial prompt count is not 3");
    }
    {
        llm::MockBackend mock;
        mock.add(support::rule({"can you reason"}, intent_reply("first")));
        mock.add(support::rule({"What if the previous intents"}, intent_reply("copy"), 0));
        llm::Gateway g(mock);
        agents::ReasonAgent agent(g, bug, {});
        const auto out = agent.generate_intents(candidates, 3, 3, column_scorer(columns));
        int second_attempts = 0;
        for (const auto& a : out.attempts)
            if (a.ordinal == 2) ++second_attempts;
        o.expect(second_attempts == 3, "always-zero intent made " + std::to_string(second_attempts) + " attempts");
        o.expect(out.intents.size() == 3 && !out.intents[1].accepted && !out.intents[2].accepted,
                 "always-zero intents marked accepted");
        o.expect(prompts_containing(g, "What if the previous intents") == 6, "adversarial prompt count is not 6");
    }
    o.detail << "1/4 < 1/3 regenerated exactly once then accepted at 2/4; always-0 stops at 3 attempts, accepted=false";
}

// 4. Prioritization.
void prioritization(Outcome& o) {
    std::mt19937 rng(99);
    for (std::size_t n = 1; n <= 20; ++n) {
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<int> ranks(n);
            std::iota(ranks.begin(), ranks.end(), 1);
            std::shuffle(ranks.begin(), ranks.end(), rng);
            std::vector<GeneratedTest> tests(n);
            for (std::size_t i = 0; i < n; ++i) {
                tests[i].index = static_cast<int>(i) + 1;
                tests[i].confidence_rank = ranks[i];
            }
            const auto kept = agents::prioritize_tests(tests, 0.7);
            o.expect(kept.size() == support::ceil_seven_tenths(n), "n=" + std::to_string(n) + " kept " + std::to_string(kept.size()));
            for (std::size_t i = 0; i < kept.size(); ++i)
                o.expect(kept[i].confidence_rank == static_cast<int>(i) + 1, "rank order broken at n=" + std::to_string(n));
        }
    }
    o.detail << "retained = ceil(0.7 n) and rank order kept for n = 1..20 (1000 shuffles)";
}

// 5. Bounded loops.
void bounded_loops(Outcome& o) {
    const auto bug = app::load_bug(corpus("count_upper").string());
    support::TempDir scratch("bounded");
    exec::ExecEnv env(exec::ToolchainProfile::load(bug.toolchain_path), scratch.path());
    auto ws = env.create_workspace(bug);

    llm::MockBackend never;
    never.add(support::rule({"This test does not compile"}, support::fenced("test_fix", R"({"source": "def (:\n"})"), 0));
    llm::Gateway g(never);
    agents::TestAgent agent(g, bug, {});
    GeneratedTest t;
    t.id = "adv_1_1";
    t.path = agents::test_file_path(1, 1, ".py");
    t.source = "def (:\n";
    const auto out = agent.ensure_compilable(t, env, ws);
    o.expect(out.compile_status == CompileStatus::DiscardedAfterRepairs, "broken test not discarded");
    o.expect(never.calls() == 3, "compile repair made " + std::to_string(never.calls()) + " calls");

    // Whole session on a bug whose scripted patches never pass.
    auto config = app::RunConfig::load((support::fixture_dir() / "config" / "fixture.json").string());
    config.backend = app::BackendKind::Mock;
    const auto bug_dir = corpus("clamp");
    const auto clamp = app::load_bug(bug_dir.string());
    exec::ExecEnv clamp_env(exec::ToolchainProfile::load(clamp.toolchain_path), scratch.path());
    llm::MockBackend mock(llm::MockBackend::load_script((bug_dir / "mock.script").string()));
    llm::Gateway gateway(mock, {}, config.token_budget);
    const auto report = app::run_session(clamp, config, gateway, clamp_env);
    o.expect(report.patches.size() == 3, "expected 3 patches");
    for (const auto& p : report.patches) {
        o.expect(p.refinement_round == 3 && p.history.size() == 3, p.id + " refined " + std::to_string(p.refinement_round) + " rounds");
        o.expect(!is_correct(p.classification) && p.classification != Classification::Plausible, p.id + " succeeded");
    }
    o.expect(prompts_containing(gateway, "Refine the patches") == 9, "refinement prompts != 3 per patch");
    o.detail << "compile repair stops after 3 calls; 3 patches stop at round 3 (9 refinement prompts)";
}

// 6. Classification pipeline.
void classification_pipeline(Outcome& o) {
    const auto bug = app::load_bug(corpus("count_upper").string());
    support::TempDir scratch("classes");
    exec::ExecEnv env(exec::ToolchainProfile::load(bug.toolchain_path), scratch.path());
    const std::string path = "src/count_upper.py";
    const std::string buggy = "        if c == 'A' or c == 'e' or c == 'I' or c == 'o' or c == 'u':";
    const std::string fixed = "        if c == 'A' or c == 'E' or c == 'I' or c == 'O' or c == 'U':";
    auto test = [](int ordinal, const std::string& arg, int expected) {
        GeneratedTest t;
        t.intent_id = intent_id_for(ordinal);
        t.index = 1;
        t.id = "adv_" + std::to_string(ordinal) + "_1";
        t.path = "generated-tests/" + t.id + ".py";
        t.compile_status = CompileStatus::Compiled;
        t.source = "import sys\nfrom count_upper import count_upper\nsys.exit(0 if count_upper(" + arg +
                   ") == " + std::to_string(expected) + " else 1)\n";
        return t;
    };
    const std::vector<PatchEdit> everywhere{
        {path, 3, 3, "    for i in range(0, len(s), 2):", "    for i in range(len(s)):"},
        {path, 5, 5, buggy, "        if c in 'AEIOU':"}};
    struct Case {
        std::string name;
        std::vector<PatchEdit> edits;
        std::vector<GeneratedTest> suite;
        Classification expected;
    };
    const std::vector<Case> cases{
        {"compile-error", {{path, 5, 5, buggy, "        if c ="}}, {}, Classification::CompileError},
        {"non-plausible", {{path, 5, 5, buggy, "        if c in 'AEIOUaeiou':"}}, {}, Classification::NonPlausible},
        {"plausible", everywhere, {test(1, "\"bAnaNa\"", 1)}, Classification::Plausible},
        {"likely-overfitting", everywhere, {test(2, "\"bAnaNa\"", 0)}, Classification::LikelyOverfitting},
        {"correct-exact", {{path, 5, 5, buggy, fixed}}, {}, Classification::CorrectExact},
    };
    for (const auto& c : cases) {
        const auto e = validator::classify_patch(c.edits, bug, env, c.suite, c.name);
        o.expect(e.classification == c.expected, c.name + " classified " + std::string(to_string(e.classification)));
    }

    const auto reference = text::read_file((corpus("count_upper") / "reference-patch" / path).string());
    std::mt19937 rng(17);
    for (int i = 0; i < 500; ++i)
        o.expect(validator::exact_match(support::inject_whitespace(reference, rng), reference), "whitespace changed a match");
    o.expect(!validator::exact_match(reference + "x", reference), "different text matched");
    o.detail << "5 constructed patches get their class; exact_match invariant under 500 whitespace injections";
}

// 7. Top@N.
void top_at_n(Outcome& o) {
    const Classification all[] = {Classification::Unvalidated,  Classification::CompileError,
                                  Classification::NonPlausible, Classification::Plausible,
                                  Classification::LikelyOverfitting, Classification::CorrectExact,
                                  Classification::CorrectBelieved};
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> len(0, 10);
    std::uniform_int_distribution<int> pick(0, 6);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<Classification> list(static_cast<std::size_t>(len(rng)));
        for (auto& c : list) c = all[pick(rng)];
        for (int n = 0; n <= 12; ++n) {
            o.expect(validator::top_at_n(list, n) == support::brute_force_top_at_n(list, n), "definition mismatch");
            o.expect(!validator::top_at_n(list, n) || validator::top_at_n(list, n + 1), "not monotone");
        }
    }
    o.detail << "2000 random lists agree with brute force for n = 0..12 and are monotone";
}

nlohmann::json without_timing(nlohmann::json j) {
    j.erase("timing");
    return j;
}

// 8. Replay determinism across two corpus runs.
void replay_determinism(Outcome& o) {
    support::TempDir a("det-a");
    support::TempDir b("det-b");
    for (const auto* dir : {&a, &b}) {
        const auto r = run_repair("corpus --dir " + q(support::corpus_dir()) + " --config " +
                                  q(support::fixture_dir() / "config" / "fixture.json") + " --backend replay --workers 2 --out " +
                                  q(dir->path()));
        o.expect(r.exit_code == 0, "corpus run exited " + std::to_string(r.exit_code));
    }
    int compared = 0;
    for (const char* id : {"add_elements", "clamp", "count_upper"}) {
        const auto ra = without_timing(read_json(a.path() / id / "report.json")).dump(2);
        const auto rb = without_timing(read_json(b.path() / id / "report.json")).dump(2);
        o.expect(ra == rb, std::string(id) + " reports differ");
        ++compared;
    }
    o.expect(text::read_file((a.path() / "corpus-summary.json").string()) ==
                 text::read_file((b.path() / "corpus-summary.json").string()),
             "corpus summaries differ");
    o.detail << compared << " reports and the corpus summary byte-identical without timing fields";
}

// 9. Token accounting and the budget cap.
void token_accounting(Outcome& o) {
    const auto report = app::run_bug(corpus("count_upper").string(),
                                     app::RunConfig::load((support::fixture_dir() / "config" / "fixture.json").string()));
    TokenUsage sum;
    const auto entries = llm::read_transcript((corpus("count_upper") / "transcript.jsonl").string());
    for (const auto& e : entries) sum += e.usage;
    o.expect(report.tokens.total == sum, "session total differs from transcript sum");
    o.expect(report.tokens.calls == static_cast<std::int64_t>(entries.size()), "call count differs");

    support::TempDir out("budget");
    const auto r = run_repair("run --bug " + q(corpus("count_upper")) + " --config " +
                              q(support::fixture_dir() / "config" / "budget-1k.json") + " --out " + q(out.path()));
    const auto partial = read_json(out.path() / "report.json");
    o.expect(r.exit_code == 1, "budget run exited " + std::to_string(r.exit_code));
    o.expect(partial["outcome"]["status"] == "budget-exhausted", "outcome is not budget-exhausted");
    o.expect(!partial["outcome"]["failure_stage"].get<std::string>().empty(), "no failure stage");
    o.detail << "total " << sum.total() << " tokens over " << entries.size()
             << " calls equals the transcript; 1K cap gives a budget-exhausted report at stage "
             << partial["outcome"]["failure_stage"].get<std::string>();
}

std::map<std::string, std::string> snapshot(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root))
        if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = text::read_file(e.path().string());
    return out;
}

// 10. Exec-env atomicity and timeouts.
void exec_atomicity(Outcome& o) {
    const auto bug = app::load_bug((support::fixture_dir() / "bugs" / "two_file").string());
    support::TempDir scratch("atomic");
    exec::ExecEnv env(exec::ToolchainProfile::load(bug.toolchain_path), scratch.path());
    auto ws = env.create_workspace(bug);
    std::mt19937 rng(31);
    int trials = 0;
    for (int i = 0; i < 200; ++i) {
        std::vector<PatchEdit> edits;
        for (const auto& f : bug.buggy_sources) {
            const auto lines = text::split_lines(f.text);
            const int at = 1 + static_cast<int>(rng() % lines.size());
            if (text::trim(lines[static_cast<std::size_t>(at - 1)]).empty()) continue;
            edits.push_back({f.path, at, at, lines[static_cast<std::size_t>(at - 1)], "pass"});
        }
        if (edits.empty()) continue;
        auto& victim = edits[rng() % edits.size()];
        if (rng() % 2 == 0)
            victim.original += "#corrupt";
        else
            victim.start_line += 3 + static_cast<int>(rng() % 4);
        const auto before = snapshot(ws.root());
        const auto result = env.apply_patch(ws, edits);
        o.expect(!result.applied, "corrupted patch applied");
        o.expect(snapshot(ws.root()) == before, "workspace changed after a mismatch");
        ++trials;
    }

    const auto hang = app::load_bug((support::fixture_dir() / "bugs" / "compile_hang").string());
    const auto profile = exec::ToolchainProfile::load(hang.toolchain_path);
    exec::ExecEnv hang_env(profile, scratch.path());
    auto hang_ws = hang_env.create_workspace(hang);
    const auto started = std::chrono::steady_clock::now();
    const auto r = hang_env.compile(hang_ws);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    o.expect(r.timed_out, "compile did not time out");
    o.expect(seconds < 1.5 * profile.timeout_seconds, "timeout took " + std::to_string(seconds) + " s");
    o.detail << trials << " corrupted patches left the workspace unchanged; compile timed out after " << seconds
             << " s (limit " << 1.5 * profile.timeout_seconds << " s)";
}

}  // namespace

int main() {
    const std::pair<const char*, Check> criteria[] = {
        {"golden fixture", golden_fixture},
        {"formula suite", formula_suite},
        {"regeneration gate", regeneration_gate},
        {"prioritization", prioritization},
        {"bounded loops", bounded_loops},
        {"classification pipeline", classification_pipeline},
        {"Top@N", top_at_n},
        {"replay determinism", replay_determinism},
        {"token accounting", token_accounting},
        {"exec-env atomicity", exec_atomicity},
    };
    int failed = 0;
    int number = 0;
    for (const auto& [name, check] : criteria) {
        ++number;
        Outcome o;
        try {
            check(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.failures.push_back(std::string("exception: ") + e.what());
        }
        std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << number << " (" << name << "): ";
        if (o.ok) {
            std::cout << o.detail.str();
        } else {
            ++failed;
            for (std::size_t i = 0; i < o.failures.size() && i < 5; ++i) std::cout << (i ? "; " : "") << o.failures[i];
        }
        std::cout << std::endl;
    }
    std::cout << (10 - failed) << "/10 criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
