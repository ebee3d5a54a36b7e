#include <cctype>
#include <random>

#include "json.hpp"

#include "doctest.h"
#include "intentrepair/app/bug_loader.hpp"
#include "intentrepair/error.hpp"
#include "intentrepair/exec/environment.hpp"
#include "intentrepair/exec/toolchain.hpp"
#include "intentrepair/util/text.hpp"
#include "intentrepair/validator/validator.hpp"
#include "support/support.hpp"

using namespace intentrepair;
using namespace intentrepair::validator;

namespace {

const std::string kPath = "src/count_upper.py";
const std::string kBuggyIf = "        if c == 'A' or c == 'e' or c == 'I' or c == 'o' or c == 'u':";
const std::string kFixedIf = "        if c == 'A' or c == 'E' or c == 'I' or c == 'O' or c == 'U':";

GeneratedTest suite_test(int ordinal, int index, const std::string& arg, int expected) {
    GeneratedTest t;
    t.intent_id = intent_id_for(ordinal);
    t.index = index;
    t.id = "adv_" + std::to_string(ordinal) + "_" + std::to_string(index);
    t.path = "generated-tests/" + std::to_string(ordinal) + "/" + t.id + ".py";
    t.input_key = arg;
    t.expected_output = std::to_string(expected);
    t.source = "import sys\nfrom count_upper import count_upper\nactual = count_upper(" + arg + ")\nif actual != " +
               std::to_string(expected) + ":\n    print(f\"Expected: " + std::to_string(expected) +
               " Actual: {actual}\")\n    sys.exit(1)\n";
    t.compile_status = CompileStatus::Compiled;
    return t;
}

struct Fixture {
    BugCase bug = app::load_bug((support::corpus_dir() / "count_upper").string());
    support::TempDir scratch{"validator"};
    exec::ExecEnv env{exec::ToolchainProfile::load(bug.toolchain_path), scratch.path()};

    Evaluation classify(const std::vector<PatchEdit>& edits, const std::vector<GeneratedTest>& suite = {}) {
        return classify_patch(edits, bug, env, suite, "test");
    }
};

// Every uppercase vowel, any index.
const std::vector<PatchEdit> kUppercaseEverywhere{
    {kPath, 3, 3, "    for i in range(0, len(s), 2):", "    for i in range(len(s)):"},
    {kPath, 5, 5, kBuggyIf, "        if c in 'AEIOU':"},
};

}  // namespace

TEST_CASE("each constructed patch receives exactly its class") {
    Fixture f;

    SUBCASE("compile-error from a syntax error") {
        const auto e = f.classify({{kPath, 5, 5, kBuggyIf, "        if c == 'A' or"}});
        CHECK(e.classification == Classification::CompileError);
        CHECK(e.summary.applied);
        CHECK_FALSE(e.summary.compiled);
        CHECK(text::contains(e.feedback, "[compiler]"));
    }
    SUBCASE("compile-error from an anchor mismatch") {
        const auto e = f.classify({{kPath, 5, 5, "        if c == 'X':", kFixedIf}});
        CHECK(e.classification == Classification::CompileError);
        CHECK_FALSE(e.summary.applied);
        CHECK(text::contains(e.feedback, "[patch application]"));
    }
    SUBCASE("non-plausible") {
        const auto e = f.classify({{kPath, 5, 5, kBuggyIf, "        if c in 'AEIOUaeiou':"}});
        CHECK(e.classification == Classification::NonPlausible);
        CHECK(e.summary.failed_original_tests == std::vector<std::string>{"failing-tests/test_count_upper.py"});
        CHECK(text::contains(e.feedback, "[original tests]"));
        CHECK(text::contains(e.feedback, "Expected: 1 Actual: 2"));
    }
    SUBCASE("plausible") {
        const auto e = f.classify(kUppercaseEverywhere, {suite_test(1, 1, "\"UNIvERsiTy\"", 3), suite_test(1, 3, "\"bAnaNa\"", 1)});
        CHECK(e.classification == Classification::Plausible);
        CHECK(e.feedback.empty());
    }
    SUBCASE("likely-overfitting") {
        const auto e = f.classify(kUppercaseEverywhere, {suite_test(2, 1, "\"UNIvERsiTy\"", 3), suite_test(2, 3, "\"bAnaNa\"", 0)});
        CHECK(e.classification == Classification::LikelyOverfitting);
        CHECK(e.summary.failed_adversarial_tests == std::vector<std::string>{"adv_2_3"});
        CHECK(text::contains(e.feedback, "[adversarial tests]"));
        CHECK(failing_tests(kUppercaseEverywhere, f.bug, f.env, {suite_test(2, 3, "\"bAnaNa\"", 0)}, "x") ==
              std::vector<std::string>{"adv_2_3"});
    }
    SUBCASE("correct-exact even when the suite disagrees") {
        const auto e = f.classify({{kPath, 5, 5, kBuggyIf, kFixedIf}}, {suite_test(1, 3, "\"bAnaNa\"", 1)});
        CHECK(e.classification == Classification::CorrectExact);
    }
}

TEST_CASE("reference matching ignores whitespace only") {
    Fixture f;
    CHECK(matches_reference(f.bug, {{kPath, 5, 5, kBuggyIf, "        if c == 'A'  or c == 'E' or\tc == 'I' or c == 'O' or c == 'U':"}}));
    CHECK_FALSE(matches_reference(f.bug, {{kPath, 5, 5, kBuggyIf, "        if c in 'AEIOU':"}}));
    BugCase no_reference = f.bug;
    no_reference.reference_patch.clear();
    CHECK_FALSE(matches_reference(no_reference, {{kPath, 5, 5, kBuggyIf, kFixedIf}}));
}

TEST_CASE("property: exact_match is invariant under whitespace injection") {
    const auto reference = text::read_file((support::corpus_dir() / "count_upper" / "reference-patch" / kPath).string());
    std::mt19937 rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        const auto noisy = support::inject_whitespace(reference, rng);
        CHECK(exact_match(noisy, reference));
        CHECK(exact_match(reference, noisy));
        // Changing one non-space character breaks the match.
        auto altered = noisy;
        std::uniform_int_distribution<std::size_t> at(0, altered.size() - 1);
        std::size_t i = at(rng);
        while (std::isspace(static_cast<unsigned char>(altered[i]))) i = (i + 1) % altered.size();
        altered[i] = altered[i] == '#' ? '$' : '#';
        CHECK_FALSE(exact_match(altered, reference));
    }
}

TEST_CASE("property: top_at_n agrees with brute force and is monotone in n") {
    const Classification all[] = {Classification::Unvalidated,      Classification::CompileError,
                                  Classification::NonPlausible,     Classification::Plausible,
                                  Classification::LikelyOverfitting, Classification::CorrectExact,
                                  Classification::CorrectBelieved};
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> len(0, 12);
    std::uniform_int_distribution<int> pick(0, 6);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<Classification> list(static_cast<std::size_t>(len(rng)));
        for (auto& c : list) c = all[pick(rng)];
        bool previous = false;
        for (int n = 0; n <= 15; ++n) {
            const bool got = top_at_n(list, n);
            CHECK(got == support::brute_force_top_at_n(list, n));
            CHECK((!previous || got));
            previous = got;
        }
    }
    CHECK_FALSE(top_at_n({}, 5));
    CHECK(top_at_n({Classification::CorrectExact}, 1));
    CHECK_FALSE(top_at_n({Classification::Plausible, Classification::CorrectExact}, 1));
}

TEST_CASE("verdicts apply only to plausible or overfitting patches") {
    Patch p;
    p.id = "patch-1-1";
    p.classification = Classification::LikelyOverfitting;
    CHECK(record_verdict(p, Verdict::BelievedCorrect, "alice") == Classification::CorrectBelieved);
    REQUIRE(p.verdict.has_value());
    CHECK(p.verdict->override_applied);
    CHECK(p.verdict->reviewer == "alice");

    Patch q;
    q.classification = Classification::Plausible;
    CHECK(record_verdict(q, Verdict::Overfitting, "llm") == Classification::LikelyOverfitting);
    CHECK_FALSE(q.verdict->override_applied);

    Patch r;
    r.classification = Classification::NonPlausible;
    try {
        record_verdict(r, Verdict::BelievedCorrect, "alice");
        FAIL("expected a verdict error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Verdict);
    }
    Patch s;
    s.classification = Classification::Plausible;
    CHECK_THROWS_AS(record_verdict(s, Verdict::BelievedCorrect, ""), Error);
    CHECK(s.classification == Classification::Plausible);

    support::TempDir dir("verdicts");
    const auto log = (dir.path() / "verdicts.jsonl").string();
    append_verdict_log(log, p, "2024-01-01T00:00:00Z");
    append_verdict_log(log, q, "2024-01-01T00:00:01Z");
    const auto lines = text::split_lines(text::read_file(log));
    REQUIRE(lines.size() == 2);
    const auto first = nlohmann::json::parse(lines[0]);
    CHECK(first["patch_id"] == "patch-1-1");
    CHECK(first["classification"] == "correct-believed");
}
