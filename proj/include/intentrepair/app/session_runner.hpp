#pragma once

#include "intentrepair/app/config.hpp"
#include "intentrepair/core/session.hpp"
#include "intentrepair/exec/environment.hpp"
#include "intentrepair/llm/gateway.hpp"

namespace intentrepair::app {

/// Runs one bug through localization, intent inference with adversarial
/// scoring, test generation, repair, refinement and classification. Never
/// throws for agent or budget failures: the report then carries the stage
/// that failed and whatever was produced before it.
SessionReport run_session(const BugCase& bug, const RunConfig& config, llm::Gateway& gateway,
                          const exec::ExecEnv& env);

/// Patches ranked for selection: correct-exact, correct-believed, plausible,
/// likely-overfitting, non-plausible, compile-error, unvalidated.
int selection_quality(Classification c);

/// Exit status for a finished report: 0 when a plausible or correct patch
/// exists, 2 when none does, 1 on error or budget exhaustion.
int exit_code(const SessionReport& report);

/// Current UTC time as ISO-8601.
std::string iso_timestamp();

}  // namespace intentrepair::app
