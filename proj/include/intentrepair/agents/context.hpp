#pragma once

#include <string>
#include <vector>

#include "intentrepair/core/model.hpp"

namespace intentrepair::agents {

/// Numbered listing of a source file for a prompt. Files longer than
/// `line_budget` lines are reduced to their declaration skeleton plus the full
/// text of `regions`; elided stretches show as "...".
std::string render_file(const SourceFile& file, int line_budget, const std::vector<Location>& regions = {});

/// Numbered listing of the lines covered by `location`.
std::string render_region(const SourceFile& file, const Location& location);

/// Text of the lines covered by `location` (no numbers).
std::string region_text(const SourceFile& file, const Location& location);

std::string render_failing_tests(const BugCase& bug);
std::string render_error_messages(const BugCase& bug);

/// Region of the function enclosing `location`: the nearest header line above
/// with smaller indentation and a parameter list, down to the end of its
/// indented body. Falls back to `location` itself.
Location enclosing_function(const SourceFile& file, const Location& location);

}  // namespace intentrepair::agents
