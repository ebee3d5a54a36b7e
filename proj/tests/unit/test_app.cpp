#include <sstream>

#include "doctest.h"
#include "intentrepair/agents/reason.hpp"
#include "intentrepair/app/bug_loader.hpp"
#include "intentrepair/app/config.hpp"
#include "intentrepair/app/pipeline.hpp"
#include "intentrepair/app/select.hpp"
#include "intentrepair/app/session_runner.hpp"
#include "intentrepair/core/json_io.hpp"
#include "intentrepair/error.hpp"
#include "intentrepair/llm/backends.hpp"
#include "intentrepair/llm/gateway.hpp"
#include "intentrepair/llm/transcript.hpp"
#include "intentrepair/util/text.hpp"
#include "support/support.hpp"

using namespace intentrepair;
using namespace intentrepair::app;
namespace fs = std::filesystem;

namespace {

RunConfig fixture_config() { return RunConfig::load((support::fixture_dir() / "config" / "fixture.json").string()); }

std::string corpus_bug_dir(const std::string& id) { return (support::corpus_dir() / id).string(); }

const Patch& patch_of(const SessionReport& r, int ordinal) {
    for (const auto& p : r.patches)
        if (p.intent_id == intent_id_for(ordinal)) return p;
    throw std::runtime_error("no patch");
}

}  // namespace

TEST_CASE("configuration loading") {
    const auto c = fixture_config();
    CHECK(c.k == 3);
    CHECK(c.n == 4);
    CHECK(c.keep_fraction == doctest::Approx(0.7));
    CHECK(c.root_causes_per_intent == 1);
    CHECK(c.backend == BackendKind::Replay);

    CHECK_THROWS_AS(RunConfig::from_json(Json::parse(R"({"kk": 3})")), Error);
    CHECK_THROWS_AS(RunConfig::from_json(Json::parse(R"({"llm": {"modle": "x"}})")), Error);
    CHECK_THROWS_AS(RunConfig::from_json(Json::parse(R"({"keep_fraction": 1.5})")), Error);
    CHECK_THROWS_AS(RunConfig::from_json(Json::parse(R"({"k": 0})")), Error);
    CHECK_THROWS_AS(RunConfig::from_json(Json::parse(R"({"backend": "psychic"})")), Error);
    const auto unlimited = RunConfig::from_json(Json::parse(R"({"token_budget": null})"));
    CHECK_FALSE(unlimited.token_budget.has_value());
}

TEST_CASE("the config digest covers settings but not plumbing") {
    auto a = fixture_config();
    auto b = a;
    b.backend = BackendKind::Mock;
    b.workers = 7;
    b.out_dir = "/elsewhere";
    CHECK(a.digest() == b.digest());
    b.k = 4;
    CHECK(a.digest() != b.digest());
    auto c = a;
    c.llm.temperature = 0.2;
    CHECK(a.digest() != c.digest());
    CHECK(a.digest().size() == 64);
}

TEST_CASE("bug directories load into cases") {
    const auto bug = load_bug(corpus_bug_dir("count_upper"));
    CHECK(bug.id == "count_upper");
    CHECK(bug.focus().path == "src/count_upper.py");
    REQUIRE(bug.failing_tests.size() == 1);
    CHECK(bug.failing_tests[0].path == "failing-tests/test_count_upper.py");
    REQUIRE(bug.reference_patch.size() == 1);
    CHECK(bug.reference_patch[0].path == "src/count_upper.py");
    CHECK(fs::path(bug.toolchain_path).is_absolute());
    CHECK(bug.error_messages.size() == 1);

    const auto clamp = load_bug(corpus_bug_dir("clamp"));
    CHECK(clamp.reference_patch.empty());
    CHECK_THROWS_AS(load_bug((support::fixture_dir() / "config").string()), Error);
}

TEST_CASE("golden session: three intents, exact scores, three classes") {
    const auto report = run_bug(corpus_bug_dir("count_upper"), fixture_config());
    CHECK(report.outcome.status == OutcomeStatus::Success);
    REQUIRE(report.intents.size() == 3);
    CHECK(*report.intents[1].adversarial_score_vs_first == Ratio{1, 2});
    CHECK(*report.intents[2].adversarial_score_vs_first == Ratio{3, 4});
    for (int i = 1; i < 3; ++i) CHECK(report.intents[static_cast<std::size_t>(i)].accepted);

    CHECK(patch_of(report, 1).classification == Classification::LikelyOverfitting);
    CHECK(patch_of(report, 2).classification == Classification::CorrectExact);
    CHECK(patch_of(report, 3).classification == Classification::NonPlausible);
    CHECK(patch_of(report, 3).refinement_round == 3);
    CHECK(patch_of(report, 1).validation.failed_confirmed_tests == std::vector<std::string>{"adv_2_3", "adv_2_4"});

    REQUIRE(report.tests.size() == 3);
    for (const auto& t : report.tests) CHECK(t.validation_suite.size() == 3);
    CHECK(report.matrix.input_keys.size() == 4);
    CHECK(report.stages.front() == SessionState::Created);
    CHECK(report.stages.back() == SessionState::Report);

    std::int64_t prompt = 0;
    std::int64_t completion = 0;
    const auto entries = llm::read_transcript(corpus_bug_dir("count_upper") + "/transcript.jsonl");
    for (const auto& e : entries) {
        prompt += e.usage.prompt_tokens;
        completion += e.usage.completion_tokens;
    }
    CHECK(report.tokens.total == TokenUsage{prompt, completion});
    CHECK(report.tokens.calls == static_cast<std::int64_t>(entries.size()));
    TokenUsage per_agent_sum;
    for (const auto& [agent, usage] : report.tokens.per_agent) per_agent_sum += usage;
    CHECK(per_agent_sum == report.tokens.total);

    CHECK(auto_select(report) == 2);
}

TEST_CASE("a 1K budget ends the session with a partial budget-exhausted report") {
    auto config = RunConfig::load((support::fixture_dir() / "config" / "budget-1k.json").string());
    const auto report = run_bug(corpus_bug_dir("count_upper"), config);
    CHECK(report.outcome.status == OutcomeStatus::BudgetExhausted);
    CHECK(report.outcome.failure_stage == "localize");
    CHECK(report.stages.back() == SessionState::Aborted);
    CHECK(report.tokens.total.total() > 1000);
    CHECK(report.tokens.calls == 2);
    CHECK(exit_code(report) == 1);
    CHECK(report.patches.empty());
}

TEST_CASE("a missing transcript entry is reported as an error outcome") {
    auto config = fixture_config();
    config.transcript = corpus_bug_dir("add_elements") + "/transcript.jsonl";
    const auto report = run_bug(corpus_bug_dir("count_upper"), config);
    CHECK(report.outcome.status == OutcomeStatus::Error);
    CHECK(report.outcome.failure_stage == "localize");
    CHECK(text::contains(report.outcome.message, "replay"));
    CHECK(exit_code(report) == 1);
}

TEST_CASE("known faults skip localization") {
    auto bug = load_bug(corpus_bug_dir("count_upper"));
    bug.known_faults.push_back({"src/count_upper.py", 5, 5});
    llm::MockBackend mock;
    llm::Gateway gateway(mock);
    agents::ReasonAgent agent(gateway, bug, {});
    const auto c = agent.known_fault_candidates();
    REQUIRE(c.size() == 1);
    CHECK(c[0].location == Location{"src/count_upper.py", 1, 7});
    CHECK(mock.calls() == 0);
}

TEST_CASE("intent selection") {
    const auto report = run_bug(corpus_bug_dir("count_upper"), fixture_config());
    {
        std::istringstream in("9\nabc\n3\n");
        std::ostringstream out;
        const auto r = select_intent(report, "ask", in, out);
        CHECK(r.selected_intent == 3);
        CHECK(text::contains(out.str(), "Please enter a number between 1 and 3."));
        CHECK(text::contains(out.str(), "adversarial score vs intent 1: 3/4"));
        CHECK(text::contains(out.str(), "patch-2-1: correct-exact"));
    }
    {
        std::istringstream in("");
        std::ostringstream out;
        CHECK(select_intent(report, "ask", in, out).selected_intent == 2);
    }
    std::istringstream none;
    std::ostringstream sink;
    CHECK(select_intent(report, "1", none, sink).selected_intent == 1);
    CHECK(select_intent(report, "auto", none, sink).selected_intent == 2);
    CHECK_THROWS_AS(select_intent(report, "4", none, sink), Error);
    CHECK_THROWS_AS(select_intent(report, "two", none, sink), Error);

    SessionReport tie;
    for (int i = 1; i <= 2; ++i) {
        ProgramIntent intent;
        intent.ordinal = i;
        intent.id = intent_id_for(i);
        tie.intents.push_back(intent);
        Patch p;
        p.intent_id = intent.id;
        p.classification = Classification::Plausible;
        tie.patches.push_back(p);
    }
    CHECK(auto_select(tie) == 1);
}

TEST_CASE("corpus runs are reproducible and summarised") {
    support::TempDir out_a("corpus-a");
    support::TempDir out_b("corpus-b");
    const auto config = fixture_config();
    const auto a = run_corpus(support::corpus_dir().string(), config, out_a.str());
    const auto b = run_corpus(support::corpus_dir().string(), config, out_b.str());
    CHECK(a.to_json() == b.to_json());
    CHECK(a.failures == 0);
    CHECK(a.bugs.size() == 3);
    CHECK(a.bugs_correct == 2);
    CHECK(a.bugs_plausible == 2);
    CHECK(a.overfitting_discards == 1);
    CHECK(a.top_at_n.at(1) + a.top_at_n.at(3) + a.top_at_n.at(5) > 0);

    for (const char* id : {"add_elements", "clamp", "count_upper"}) {
        auto ra = parse_report(text::read_file((out_a.path() / id / "report.json").string()));
        auto rb = parse_report(text::read_file((out_b.path() / id / "report.json").string()));
        ra.timing = {};
        rb.timing = {};
        CHECK(dump_report(ra) == dump_report(rb));
    }
    CHECK(text::read_file((out_a.path() / "corpus-summary.json").string()) ==
          text::read_file((out_b.path() / "corpus-summary.json").string()));
}

TEST_CASE("exit codes") {
    SessionReport r;
    r.outcome.status = OutcomeStatus::Success;
    CHECK(exit_code(r) == 0);
    r.outcome.status = OutcomeStatus::NoPlausiblePatch;
    CHECK(exit_code(r) == 2);
    r.outcome.status = OutcomeStatus::Error;
    CHECK(exit_code(r) == 1);
    CHECK(selection_quality(Classification::CorrectExact) > selection_quality(Classification::CorrectBelieved));
    CHECK(selection_quality(Classification::Plausible) > selection_quality(Classification::LikelyOverfitting));
}
