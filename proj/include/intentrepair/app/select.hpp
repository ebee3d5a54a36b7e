#pragma once

#include <iosfwd>
#include <string>

#include "intentrepair/core/session.hpp"

namespace intentrepair::app {

/// Ordinal of the intent owning the best-classified patch; the lowest
/// ordinal wins ties, intent 1 when there are no patches.
int auto_select(const SessionReport& report);

/// Records the chosen intent. `choice` is an ordinal, "auto", or "ask"; "ask"
/// lists every intent with its score, tests and patch classes on `out` and
/// reads an ordinal from `in`, asking again on bad input. End of input falls
/// back to auto. Throws InvalidInput for a bad non-interactive ordinal.
SessionReport select_intent(SessionReport report, const std::string& choice, std::istream& in, std::ostream& out);

}  // namespace intentrepair::app
