#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "intentrepair/core/model.hpp"
#include "intentrepair/exec/patching.hpp"
#include "intentrepair/exec/toolchain.hpp"

namespace intentrepair::exec {

/// A private copy of a bug's sources and failing tests. Removed from disk
/// when destroyed unless kept.
class Workspace {
public:
    Workspace(std::filesystem::path root, std::string bug_id, std::string provenance);
    Workspace(Workspace&& other) noexcept;
    Workspace& operator=(Workspace&& other) noexcept;
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;
    ~Workspace();

    const std::filesystem::path& root() const { return root_; }
    const std::string& bug_id() const { return bug_id_; }
    const std::string& provenance() const { return provenance_; }
    void set_provenance(std::string p) { provenance_ = std::move(p); }
    void keep() { keep_ = true; }

    std::string read(const std::string& relative) const;
    void write(const std::string& relative, std::string_view content) const;
    bool exists(const std::string& relative) const;

private:
    std::filesystem::path root_;
    std::string bug_id_;
    std::string provenance_;
    bool keep_ = false;
};

enum class Phase { Compile, Test };

struct ExecutionResult {
    Phase phase = Phase::Compile;
    int exit_status = 0;
    std::vector<std::string> passed;
    std::vector<std::string> failed;
    std::string output;
    bool timed_out = false;
    std::chrono::milliseconds wall_time{0};

    bool success() const { return !timed_out && exit_status == 0 && failed.empty(); }
};

struct ApplyResult {
    bool applied = false;
    std::string mismatch;
};

/// Agent-environment boundary: workspaces, anchored patching, compilation and
/// test execution through one toolchain profile. Safe to use concurrently on
/// distinct workspaces.
class ExecEnv {
public:
    /// `scratch` is the directory under which workspaces are created; empty
    /// selects the system temporary directory.
    explicit ExecEnv(ToolchainProfile profile, std::filesystem::path scratch = {});

    const ToolchainProfile& profile() const { return profile_; }

    Workspace create_workspace(const BugCase& bug, std::string provenance = "pristine") const;

    /// All-or-nothing: on a mismatch no file in the workspace changes.
    ApplyResult apply_patch(Workspace& workspace, const std::vector<PatchEdit>& edits) const;

    ExecutionResult compile(const Workspace& workspace) const;

    /// Compiles a single generated test. Passes trivially when the profile has
    /// no test_compile_command.
    ExecutionResult compile_test(const Workspace& workspace, const std::string& test_path) const;

    /// Runs each test (workspace-relative path) through test_command. A
    /// timeout fails the running test and every test not yet run.
    ExecutionResult run_tests(const Workspace& workspace, const std::vector<std::string>& tests) const;

    std::size_t output_cap() const { return output_cap_; }

private:
    std::chrono::milliseconds timeout() const;

    ToolchainProfile profile_;
    std::filesystem::path scratch_;
    std::size_t output_cap_ = 64 * 1024;
};

}  // namespace intentrepair::exec
