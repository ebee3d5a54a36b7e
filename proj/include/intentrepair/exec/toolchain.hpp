#pragma once

#include <map>
#include <string>
#include <vector>

namespace intentrepair::exec {

/// How to build and test one kind of target program. Read from a key-value
/// file:
///
///     # comment
///     name = python3
///     test_extension = .py
///     compile_command = python3 -m py_compile src/*.py
///     test_compile_command = python3 -m py_compile {test_path}
///     test_command = env PYTHONPATH={workdir}/src python3 -B {test_path}
///     timeout_seconds = 10
///     env_allowlist = PATH, HOME, LANG
///
/// Commands run through /bin/sh inside the workspace root. Placeholders are
/// {workdir}, {test_path} and {test_name}; substituted values are
/// shell-quoted. An empty test_compile_command means generated tests have no
/// separate compile step.
struct ToolchainProfile {
    std::string name;
    std::string compile_command;
    std::string test_compile_command;
    std::string test_command;
    std::string test_extension;
    double timeout_seconds = 60;
    std::vector<std::string> env_allowlist{"PATH", "HOME", "LANG", "LC_ALL", "TMPDIR"};

    static ToolchainProfile load(const std::string& path);
    static ToolchainProfile parse(const std::string& text);

    /// Throws InvalidConfiguration on unknown placeholders or a non-positive
    /// timeout.
    void validate() const;
};

std::string shell_quote(const std::string& s);

/// Replaces {name} placeholders with shell-quoted values. Throws
/// InvalidConfiguration for placeholders missing from `values`.
std::string render_command(const std::string& templ, const std::map<std::string, std::string>& values);

}  // namespace intentrepair::exec
