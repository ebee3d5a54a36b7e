#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "intentrepair/core/model.hpp"
#include "intentrepair/exec/environment.hpp"

namespace intentrepair::validator {

/// Equality after collapsing whitespace runs and trimming.
bool exact_match(std::string_view patched, std::string_view reference);

/// True when the bug has reference files and applying `edits` to the pristine
/// sources reproduces every one of them up to whitespace.
bool matches_reference(const BugCase& bug, const std::vector<PatchEdit>& edits);

struct Evaluation {
    Classification classification = Classification::Unvalidated;
    ValidationSummary summary;
    /// Failure output labelled by origin, for refinement prompts. Empty when
    /// nothing failed.
    std::string feedback;
};

/// Applies, compiles and tests one patch version in a fresh workspace:
/// compile-error, then non-plausible on any failing original test, then
/// correct-exact on a reference match, then likely-overfitting on any failing
/// test of `adversarial_suite`, else plausible. Environment failures yield
/// unvalidated.
Evaluation classify_patch(const std::vector<PatchEdit>& edits, const BugCase& bug, const exec::ExecEnv& env,
                          const std::vector<GeneratedTest>& adversarial_suite, const std::string& provenance);

/// Ids of the suite tests the patched program fails. Throws on environment
/// errors and on patches that do not apply or compile.
std::vector<std::string> failing_tests(const std::vector<PatchEdit>& edits, const BugCase& bug,
                                       const exec::ExecEnv& env, const std::vector<GeneratedTest>& suite,
                                       const std::string& provenance);

/// Applies a reviewer verdict. Only plausible and likely-overfitting patches
/// accept one; anything else throws a verdict error.
Classification record_verdict(Patch& patch, Verdict verdict, const std::string& reviewer);

/// Appends one newline-delimited record to the verdict log.
void append_verdict_log(const std::string& path, const Patch& patch, const std::string& timestamp);

/// True iff one of the first n classifications is correct.
bool top_at_n(const std::vector<Classification>& ordered, int n);

}  // namespace intentrepair::validator
