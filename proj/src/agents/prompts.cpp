#include "intentrepair/agents/prompts.hpp"

namespace intentrepair::agents::prompts {

std::string generate_tests(int n) { return "Generate " + std::to_string(n) + " tests based on provided program intent."; }

std::string root_causes(int n) {
    static constexpr char kNames[] = "XYZUVW";
    std::string names;
    for (int i = 0; i < n; ++i) {
        if (i > 0) names += ", ";
        names += kNames[i % 6];
    }
    return "What are the top-" + std::to_string(n) +
           " most likely root causes of this bug-breaking program intent? Answer in " + names + ".";
}

std::string patch_for_cause(std::string_view cause) {
    return "Generate a patch to repair the bug caused by " + std::string(cause) + ".";
}

}  // namespace intentrepair::agents::prompts
