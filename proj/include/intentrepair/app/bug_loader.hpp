#pragma once

#include <string>

#include "intentrepair/core/model.hpp"

namespace intentrepair::app {

/// Reads a bug directory:
///
///     bug.json          manifest
///     src/...           buggy sources
///     failing-tests/... failing developer tests
///     reference-patch/  optional fixed files, mirroring the paths above
///
/// Manifest keys: id, focus (source path shown first), toolchain (profile path
/// relative to the bug directory), optional failing_tests (defaults to every
/// file under failing-tests/), error_messages, known_faults [{path,
/// start_line, end_line}]. The returned toolchain_path is absolute.
BugCase load_bug(const std::string& dir);

}  // namespace intentrepair::app
