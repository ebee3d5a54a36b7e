#pragma once

#include <string>
#include <utility>
#include <vector>

#include "intentrepair/core/model.hpp"
#include "intentrepair/exec/environment.hpp"
#include "intentrepair/llm/gateway.hpp"

namespace intentrepair::agents {

struct TestOptions {
    int context_line_budget = 400;
    int compile_repairs = 3;
    std::size_t feedback_bytes = 4096;
    std::string test_extension = ".py";
};

/// Workspace-relative file for test `index` of intent `ordinal`.
std::string test_file_path(int ordinal, int index, const std::string& extension);

/// Intent-conditioned test generation, assertion critique, adversarial
/// re-labelling, compile repair and confidence ranking.
class TestAgent {
public:
    TestAgent(llm::Gateway& gateway, const BugCase& bug, LlmParams params, TestOptions options = {});

    /// n tests for the intent, compile status not attempted.
    std::vector<GeneratedTest> generate_initial_tests(const ProgramIntent& intent, int n);

    /// Flags the tests the model doubts. A malformed answer flags nothing.
    std::vector<GeneratedTest> criticize_assertions(const ProgramIntent& intent, std::vector<GeneratedTest> tests);

    /// One test per usable base test, same input, expected output under
    /// `intent`. Answers whose input matches no base test are dropped.
    std::vector<GeneratedTest> generate_adversarial_tests(const std::vector<GeneratedTest>& base,
                                                          const ProgramIntent& base_intent,
                                                          const ProgramIntent& intent);

    /// Writes the test into `workspace` and compiles it, asking the model for
    /// a fix after each failure, at most `compile_repairs` times.
    GeneratedTest ensure_compilable(GeneratedTest test, const exec::ExecEnv& env, const exec::Workspace& workspace);

    /// Assigns confidence_rank from the model's ranking. Tests the ranking
    /// omits follow in generation order.
    std::vector<GeneratedTest> rank_tests(const ProgramIntent& intent, std::vector<GeneratedTest> tests);

    const std::vector<std::string>& warnings() const { return warnings_; }

private:
    std::vector<GeneratedTest> parse_tests(const nlohmann::json& block, const ProgramIntent& intent);
    std::string program_context() const;
    llm::Conversation fresh() const;

    llm::Gateway& gateway_;
    const BugCase& bug_;
    LlmParams params_;
    TestOptions options_;
    std::vector<std::string> warnings_;
};

/// Rows are the usable tests of the first column in index order; other
/// columns hold the expected output of their usable test with the same input.
AdversarialTestMatrix build_matrix(const std::vector<std::pair<std::string, std::vector<GeneratedTest>>>& columns);

/// different / compared over rows where both intents have an output. Throws
/// ScoreUndefined when no row is comparable.
Ratio adversarial_score(const AdversarialTestMatrix& matrix, const std::string& intent_a,
                        const std::string& intent_b);

/// ceil(fraction * n), at least 1 when n > 0.
std::size_t retained_count(std::size_t n, double keep_fraction);

/// The retained_count best-ranked tests in rank order; ties keep generation
/// order.
std::vector<GeneratedTest> prioritize_tests(std::vector<GeneratedTest> tests, double keep_fraction);

}  // namespace intentrepair::agents
