#include "intentrepair/agents/test.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "intentrepair/agents/context.hpp"
#include "intentrepair/agents/prompts.hpp"
#include "intentrepair/error.hpp"
#include "intentrepair/util/text.hpp"

namespace intentrepair::agents {

namespace {

constexpr std::string_view kAgent = "test";

constexpr std::string_view kTestsExample =
    R"({"tests": [{"input": "\"abc\"", "expected": "0", "source": "from example import f\nassert f(\"abc\") == 0\n"}]})";
constexpr std::string_view kCritiqueExample = R"({"doubtful": [2]})";
constexpr std::string_view kRankingExample = R"({"order": [3, 1, 2]})";
constexpr std::string_view kFixExample = R"({"source": "from example import f\nassert f(\"abc\") == 0\n"})";

std::string scalar_text(const nlohmann::json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return {};
    return it->is_string() ? it->get<std::string>() : it->dump();
}

std::string tests_format() {
    return llm::format_instruction("tests", kTestsExample) +
           "\ninput is the argument list exactly as the test passes it, expected is the expected return value, and "
           "source is the complete test file. A test passes only when the program behaves as the intent says.";
}

std::string listing(const std::vector<GeneratedTest>& tests) {
    std::ostringstream out;
    for (const auto& t : tests) {
        out << "Test " << t.index << ": input " << t.input_key << " -> expected " << t.expected_output << "\n"
            << t.source << (t.source.ends_with('\n') ? "" : "\n") << "\n";
    }
    return out.str();
}

std::vector<int> int_list(const nlohmann::json& block, const char* key) {
    std::vector<int> out;
    auto it = block.find(key);
    if (it == block.end() || !it->is_array()) return out;
    for (const auto& v : *it) {
        if (v.is_number_integer()) {
            out.push_back(v.get<int>());
        } else if (v.is_string()) {
            try {
                out.push_back(std::stoi(v.get<std::string>()));
            } catch (const std::exception&) {
            }
        }
    }
    return out;
}

}  // namespace

std::string test_file_path(int ordinal, int index, const std::string& extension) {
    const auto o = std::to_string(ordinal);
    return "generated-tests/" + o + "/adv_" + o + "_" + std::to_string(index) + extension;
}

TestAgent::TestAgent(llm::Gateway& gateway, const BugCase& bug, LlmParams params, TestOptions options)
    : gateway_(gateway), bug_(bug), params_(std::move(params)), options_(std::move(options)) {}

llm::Conversation TestAgent::fresh() const {
    llm::Conversation c;
    c.params = params_;
    c.system(std::string(prompts::kTestSystem));
    return c;
}

std::string TestAgent::program_context() const {
    std::ostringstream out;
    out << "Program under test:\n";
    for (const auto& f : bug_.buggy_sources)
        out << "File: " << f.path << "\n" << render_file(f, options_.context_line_budget) << "\n";
    out << "Example of an existing test:\n" << render_failing_tests(bug_) << "\n";
    return out.str();
}

std::vector<GeneratedTest> TestAgent::parse_tests(const nlohmann::json& block, const ProgramIntent& intent) {
    std::vector<GeneratedTest> out;
    auto it = block.find("tests");
    if (it == block.end() || !it->is_array()) return out;
    for (const auto& t : *it) {
        if (!t.is_object()) continue;
        GeneratedTest g;
        g.intent_id = intent.id;
        g.index = static_cast<int>(out.size()) + 1;
        g.input_key = canonical_input_key(scalar_text(t, "input"));
        g.expected_output = canonical_output(scalar_text(t, "expected"));
        g.source = scalar_text(t, "source");
        if (g.source.empty() || g.input_key.empty()) {
            warnings_.push_back(intent.id + ": dropped a generated test without input or source");
            continue;
        }
        if (!g.source.ends_with('\n')) g.source += '\n';
        out.push_back(std::move(g));
    }
    return out;
}

std::vector<GeneratedTest> TestAgent::generate_initial_tests(const ProgramIntent& intent, int n) {
    if (n < 1) throw Error(ErrorKind::InvalidConfiguration, "test count must be at least 1");
    auto conversation = fresh();
    conversation.user(program_context() + "Program intent: " + intent.description + "\n\n" +
                      prompts::generate_tests(n) + tests_format());
    nlohmann::json block;
    try {
        block = llm::complete_structured(gateway_, conversation, "tests", kAgent);
    } catch (const ParseError& e) {
        throw Error(ErrorKind::TestGeneration, std::string("initial tests: ") + e.what());
    }
    auto tests = parse_tests(block, intent);
    if (static_cast<int>(tests.size()) > n) tests.resize(static_cast<std::size_t>(n));
    if (tests.empty()) throw Error(ErrorKind::TestGeneration, "the model produced no usable initial tests");
    if (static_cast<int>(tests.size()) < n)
        warnings_.push_back(intent.id + ": asked for " + std::to_string(n) + " tests, got " +
                            std::to_string(tests.size()));
    for (auto& t : tests) {
        t.path = test_file_path(intent.ordinal, t.index, options_.test_extension);
        t.id = "adv_" + std::to_string(intent.ordinal) + "_" + std::to_string(t.index);
    }
    return tests;
}

std::vector<GeneratedTest> TestAgent::criticize_assertions(const ProgramIntent& intent,
                                                           std::vector<GeneratedTest> tests) {
    if (tests.empty()) return tests;
    auto conversation = fresh();
    conversation.user(program_context() + "Program intent: " + intent.description + "\n\nTests:\n" + listing(tests) +
                      std::string(prompts::kCritique) +
                      " List the numbers of the tests whose expected output may be wrong; use an empty list when "
                      "all are right." +
                      llm::format_instruction("critique", kCritiqueExample));
    try {
        auto block = llm::complete_structured(gateway_, conversation, "critique", kAgent);
        for (int index : int_list(block, "doubtful")) {
            for (auto& t : tests)
                if (t.index == index) t.low_confidence = true;
        }
    } catch (const ParseError&) {
        warnings_.push_back(intent.id + ": assertion critique unreadable, no tests flagged");
    }
    return tests;
}

std::vector<GeneratedTest> TestAgent::generate_adversarial_tests(const std::vector<GeneratedTest>& base,
                                                                 const ProgramIntent& base_intent,
                                                                 const ProgramIntent& intent) {
    std::vector<GeneratedTest> usable;
    for (const auto& t : base)
        if (t.usable()) usable.push_back(t);
    if (usable.empty()) throw Error(ErrorKind::TestGeneration, "no usable base tests to adapt for " + intent.id);

    auto conversation = fresh();
    conversation.user(program_context() + "Tests written for the intent \"" + base_intent.description + "\":\n" +
                      listing(usable) + "New intent: " + intent.description + "\n\n" +
                      std::string(prompts::kAdversarialTests) +
                      " Keep every input exactly as it is and set each expected output to what the new intent "
                      "requires; it may stay the same where both intents agree. Keep the tests in the same order." +
                      tests_format());
    nlohmann::json block;
    try {
        block = llm::complete_structured(gateway_, conversation, "tests", kAgent);
    } catch (const ParseError& e) {
        throw Error(ErrorKind::TestGeneration, intent.id + " adversarial tests: " + e.what());
    }

    std::vector<GeneratedTest> out;
    for (auto& t : parse_tests(block, intent)) {
        auto match = std::find_if(usable.begin(), usable.end(),
                                  [&](const GeneratedTest& b) { return b.input_key == t.input_key; });
        if (match == usable.end()) {
            warnings_.push_back(intent.id + ": dropped adversarial test with unknown input " + t.input_key);
            continue;
        }
        if (std::any_of(out.begin(), out.end(), [&](const GeneratedTest& o) { return o.index == match->index; })) {
            warnings_.push_back(intent.id + ": dropped duplicate adversarial test for input " + t.input_key);
            continue;
        }
        t.index = match->index;
        t.path = test_file_path(intent.ordinal, t.index, options_.test_extension);
        t.id = "adv_" + std::to_string(intent.ordinal) + "_" + std::to_string(t.index);
        out.push_back(std::move(t));
    }
    for (const auto& b : usable) {
        if (std::none_of(out.begin(), out.end(), [&](const GeneratedTest& o) { return o.index == b.index; }))
            warnings_.push_back(intent.id + ": no adversarial counterpart for input " + b.input_key);
    }
    std::sort(out.begin(), out.end(), [](const GeneratedTest& a, const GeneratedTest& b) { return a.index < b.index; });
    return out;
}

GeneratedTest TestAgent::ensure_compilable(GeneratedTest test, const exec::ExecEnv& env,
                                           const exec::Workspace& workspace) {
    workspace.write(test.path, test.source);
    auto result = env.compile_test(workspace, test.path);
    test.repair_attempts = 0;
    while (!result.success()) {
        if (test.repair_attempts >= options_.compile_repairs) {
            test.compile_status = CompileStatus::DiscardedAfterRepairs;
            warnings_.push_back(test.id + ": discarded after " + std::to_string(test.repair_attempts) +
                                " compile repairs");
            return test;
        }
        ++test.repair_attempts;
        auto conversation = fresh();
        conversation.user("This test does not compile.\n\nFile: " + test.path + "\n" + test.source +
                          "\nCompiler output:\n" + text::tail(result.output, options_.feedback_bytes) +
                          "\nRevise the test so it compiles. Keep its input and expected output unchanged." +
                          llm::format_instruction("test_fix", kFixExample));
        try {
            auto block = llm::complete_structured(gateway_, conversation, "test_fix", kAgent);
            auto source = scalar_text(block, "source");
            if (!source.empty()) {
                if (!source.ends_with('\n')) source += '\n';
                test.source = std::move(source);
            }
        } catch (const ParseError&) {
            warnings_.push_back(test.id + ": unreadable compile repair");
        }
        workspace.write(test.path, test.source);
        result = env.compile_test(workspace, test.path);
    }
    test.compile_status = CompileStatus::Compiled;
    return test;
}

std::vector<GeneratedTest> TestAgent::rank_tests(const ProgramIntent& intent, std::vector<GeneratedTest> tests) {
    if (tests.empty()) return tests;
    std::vector<int> order;
    auto conversation = fresh();
    conversation.user("Program intent: " + intent.description + "\n\nTests:\n" + listing(tests) +
                      std::string(prompts::kRankTests) +
                      " List every test number, the one whose assertion you trust most first." +
                      llm::format_instruction("ranking", kRankingExample));
    try {
        order = int_list(llm::complete_structured(gateway_, conversation, "ranking", kAgent), "order");
    } catch (const ParseError&) {
        warnings_.push_back(intent.id + ": test ranking unreadable, keeping generation order");
    }

    std::map<int, int> rank_of;
    int next = 1;
    for (int index : order) {
        const bool known =
            std::any_of(tests.begin(), tests.end(), [&](const GeneratedTest& t) { return t.index == index; });
        if (known && !rank_of.count(index)) rank_of[index] = next++;
    }
    std::vector<GeneratedTest*> by_index;
    for (auto& t : tests) by_index.push_back(&t);
    std::sort(by_index.begin(), by_index.end(), [](auto* a, auto* b) { return a->index < b->index; });
    for (auto* t : by_index) {
        if (!rank_of.count(t->index)) rank_of[t->index] = next++;
        t->confidence_rank = rank_of[t->index];
    }
    return tests;
}

AdversarialTestMatrix build_matrix(const std::vector<std::pair<std::string, std::vector<GeneratedTest>>>& columns) {
    AdversarialTestMatrix m;
    if (columns.empty()) return m;

    std::vector<const GeneratedTest*> rows;
    for (const auto& t : columns.front().second)
        if (t.usable()) rows.push_back(&t);
    std::stable_sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->index < b->index; });
    for (const auto* r : rows) {
        if (std::find(m.input_keys.begin(), m.input_keys.end(), r->input_key) == m.input_keys.end())
            m.input_keys.push_back(r->input_key);
    }

    for (const auto& [intent_id, tests] : columns) {
        std::vector<std::optional<std::string>> column;
        for (const auto& key : m.input_keys) {
            auto it = std::find_if(tests.begin(), tests.end(),
                                   [&](const GeneratedTest& t) { return t.usable() && t.input_key == key; });
            column.push_back(it == tests.end() ? std::nullopt : std::optional<std::string>(it->expected_output));
        }
        m.columns[intent_id] = std::move(column);
    }
    return m;
}

Ratio adversarial_score(const AdversarialTestMatrix& matrix, const std::string& intent_a,
                        const std::string& intent_b) {
    auto a = matrix.columns.find(intent_a);
    auto b = matrix.columns.find(intent_b);
    if (a == matrix.columns.end() || b == matrix.columns.end())
        throw Error(ErrorKind::InvalidInput, "matrix has no column for " + (a == matrix.columns.end() ? intent_a : intent_b));

    std::int64_t compared = 0;
    std::int64_t different = 0;
    const auto rows = std::min(a->second.size(), b->second.size());
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& x = a->second[i];
        const auto& y = b->second[i];
        if (!x || !y) continue;
        ++compared;
        if (canonical_output(*x) != canonical_output(*y)) ++different;
    }
    if (compared == 0)
        throw Error(ErrorKind::ScoreUndefined, "no comparable tests between " + intent_a + " and " + intent_b);
    return Ratio{different, compared};
}

std::size_t retained_count(std::size_t n, double keep_fraction) {
    if (!(keep_fraction > 0.0 && keep_fraction <= 1.0))
        throw Error(ErrorKind::InvalidConfiguration, "keep fraction must lie in (0, 1]");
    if (n == 0) return 0;
    // The epsilon absorbs binary error in products such as 0.7 * 20.
    const auto kept = static_cast<std::size_t>(std::ceil(keep_fraction * static_cast<double>(n) - 1e-9));
    return std::clamp<std::size_t>(kept, 1, n);
}

std::vector<GeneratedTest> prioritize_tests(std::vector<GeneratedTest> tests, double keep_fraction) {
    const auto keep = retained_count(tests.size(), keep_fraction);
    std::stable_sort(tests.begin(), tests.end(), [](const GeneratedTest& a, const GeneratedTest& b) {
        return a.confidence_rank < b.confidence_rank;
    });
    tests.resize(keep);
    return tests;
}

}  // namespace intentrepair::agents
