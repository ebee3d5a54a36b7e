#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "intentrepair/core/model.hpp"

namespace intentrepair::exec {

/// Search radius, in lines, around an edit's stated start line.
inline constexpr int kAnchorWindow = 2;

using FileMap = std::map<std::string, std::string>;

struct ApplyOutcome {
    bool applied = false;
    FileMap files;          // patched contents of every touched file
    std::string mismatch;   // which edit failed and why, when !applied
};

/// Resolves every edit's anchor against the given file contents and applies
/// all of them, or none. An anchor matches when the whitespace-collapsed text
/// of the same number of lines, starting within ±kAnchorWindow of the stated
/// start line, equals the collapsed original text. Edits are resolved against
/// the unmodified text and applied bottom-up, so line numbers never drift.
ApplyOutcome apply_edits(const FileMap& files, const std::vector<PatchEdit>& edits);

/// Located 1-based start line of an edit's anchor, if any.
std::optional<int> locate_anchor(const std::string& file_text, const PatchEdit& edit);

}  // namespace intentrepair::exec
