#pragma once

#include <string>
#include <string_view>

namespace intentrepair::agents::prompts {

inline constexpr std::string_view kReasonSystem =
    "You are an experienced software engineer debugging a program. You reason about what the developer "
    "intended the code to do and where the code departs from that intent.";
inline constexpr std::string_view kTestSystem =
    "You are an experienced software engineer writing small, self-contained unit tests. Every test checks one "
    "input against one expected output.";
inline constexpr std::string_view kRepairSystem =
    "You are an experienced software engineer repairing a bug with minimal, targeted edits.";

inline constexpr std::string_view kLocateFunctions = "Locate the top-3 faulty functions from the given buggy class.";
inline constexpr std::string_view kLocateStatements =
    "If the fault does not exist in the function, could you locate the variable definition or other potentially "
    "buggy classes?";
inline constexpr std::string_view kLocateAlternatives =
    "What if the previous answers are incorrect? What alternatives are available?";
inline constexpr std::string_view kInitialIntent =
    "Given the buggy code snippet, can you reason about the program intent and locate the corresponding fault "
    "statements?";
inline constexpr std::string_view kAdversarialIntent =
    "What if the previous intents are incorrect? What alternatives are available?";
inline constexpr std::string_view kCritique = "Are there any assertions that could be wrong?";
inline constexpr std::string_view kAdversarialTests =
    "Modify the previous tests based on this intent to maintain the same inputs but generate different outputs.";
inline constexpr std::string_view kRankTests = "Rank tests based on confidence of assertion correctness.";
inline constexpr std::string_view kRefine = "Refine the patches based on the compilation and execution errors.";

/// "Generate N tests based on provided program intent." with N filled in.
std::string generate_tests(int n);

/// "What are the top-3 most likely root causes ... Answer in X, Y, Z." with the
/// count and placeholder list sized to `n`.
std::string root_causes(int n);

/// "Generate a patch to repair the bug caused by <cause>."
std::string patch_for_cause(std::string_view cause);

}  // namespace intentrepair::agents::prompts
