#include "intentrepair/exec/environment.hpp"

#include <cstdlib>

#include "intentrepair/error.hpp"
#include "intentrepair/exec/subprocess.hpp"
#include "intentrepair/util/text.hpp"

namespace fs = std::filesystem;

namespace intentrepair::exec {

namespace {

constexpr int kCommandNotFound = 127;

fs::path make_unique_dir(const fs::path& base, const std::string& stem) {
    std::error_code ec;
    fs::create_directories(base, ec);
    std::string templ = (base / (stem + "-XXXXXX")).string();
    if (::mkdtemp(templ.data()) == nullptr)
        throw Error(ErrorKind::Environment, "cannot create workspace under '" + base.string() + "'");
    return templ;
}

std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s) out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ? c : '_');
    return out.empty() ? "bug" : out;
}

// Workspace roots are random; keep them out of output that reaches prompts.
std::string scrub(std::string output, const fs::path& root) {
    const auto prefix = root.string();
    for (const auto& needle : {prefix + "/", prefix}) {
        const std::string replacement = needle.back() == '/' ? "" : ".";
        std::size_t pos = 0;
        while ((pos = output.find(needle, pos)) != std::string::npos) {
            output.replace(pos, needle.size(), replacement);
            pos += replacement.size();
        }
    }
    return output;
}

void check_spawned(const ProcessResult& r, const std::string& command) {
    if (!r.timed_out && r.exit_code == kCommandNotFound)
        throw Error(ErrorKind::Environment, "command not found: " + command + "\n" + r.output);
}

}  // namespace

Workspace::Workspace(fs::path root, std::string bug_id, std::string provenance)
    : root_(std::move(root)), bug_id_(std::move(bug_id)), provenance_(std::move(provenance)) {}

Workspace::Workspace(Workspace&& other) noexcept
    : root_(std::move(other.root_)),
      bug_id_(std::move(other.bug_id_)),
      provenance_(std::move(other.provenance_)),
      keep_(other.keep_) {
    other.root_.clear();
}

Workspace& Workspace::operator=(Workspace&& other) noexcept {
    if (this != &other) {
        if (!keep_ && !root_.empty()) {
            std::error_code ec;
            fs::remove_all(root_, ec);
        }
        root_ = std::move(other.root_);
        bug_id_ = std::move(other.bug_id_);
        provenance_ = std::move(other.provenance_);
        keep_ = other.keep_;
        other.root_.clear();
    }
    return *this;
}

Workspace::~Workspace() {
    if (!keep_ && !root_.empty()) {
        std::error_code ec;
        fs::remove_all(root_, ec);
    }
}

std::string Workspace::read(const std::string& relative) const { return text::read_file((root_ / relative).string()); }

void Workspace::write(const std::string& relative, std::string_view content) const {
    text::write_file((root_ / relative).string(), content);
}

bool Workspace::exists(const std::string& relative) const { return fs::exists(root_ / relative); }

ExecEnv::ExecEnv(ToolchainProfile profile, fs::path scratch) : profile_(std::move(profile)), scratch_(std::move(scratch)) {
    profile_.validate();
    if (scratch_.empty()) scratch_ = fs::temp_directory_path() / "intentrepair";
}

std::chrono::milliseconds ExecEnv::timeout() const {
    return std::chrono::milliseconds(static_cast<long long>(profile_.timeout_seconds * 1000.0));
}

Workspace ExecEnv::create_workspace(const BugCase& bug, std::string provenance) const {
    bug.validate();
    Workspace ws(make_unique_dir(scratch_, sanitize(bug.id)), bug.id, std::move(provenance));
    try {
        for (const auto& f : bug.buggy_sources) ws.write(f.path, f.text);
        for (const auto& f : bug.failing_tests) ws.write(f.path, f.text);
    } catch (const Error& e) {
        throw Error(ErrorKind::Environment, std::string("populating workspace failed: ") + e.what());
    }
    return ws;
}

ApplyResult ExecEnv::apply_patch(Workspace& workspace, const std::vector<PatchEdit>& edits) const {
    FileMap files;
    for (const auto& e : edits) {
        if (files.count(e.path)) continue;
        if (!workspace.exists(e.path)) return {false, "edit targets missing file '" + e.path + "'"};
        files[e.path] = workspace.read(e.path);
    }
    auto outcome = apply_edits(files, edits);
    if (!outcome.applied) return {false, outcome.mismatch};
    for (const auto& [path, content] : outcome.files) workspace.write(path, content);
    return {true, {}};
}

ExecutionResult ExecEnv::compile(const Workspace& workspace) const {
    ExecutionResult out;
    out.phase = Phase::Compile;
    if (profile_.compile_command.empty()) return out;
    const auto cmd = render_command(profile_.compile_command, {{"workdir", workspace.root().string()}});
    const auto r = run_shell(cmd, workspace.root().string(), timeout(), profile_.env_allowlist, output_cap_);
    check_spawned(r, cmd);
    out.exit_status = r.exit_code;
    out.output = scrub(r.output, workspace.root());
    out.timed_out = r.timed_out;
    out.wall_time = r.wall_time;
    return out;
}

ExecutionResult ExecEnv::compile_test(const Workspace& workspace, const std::string& test_path) const {
    ExecutionResult out;
    out.phase = Phase::Compile;
    if (profile_.test_compile_command.empty()) return out;
    const auto cmd = render_command(profile_.test_compile_command,
                                    {{"workdir", workspace.root().string()},
                                     {"test_path", test_path},
                                     {"test_name", fs::path(test_path).stem().string()}});
    const auto r = run_shell(cmd, workspace.root().string(), timeout(), profile_.env_allowlist, output_cap_);
    check_spawned(r, cmd);
    out.exit_status = r.exit_code;
    out.output = scrub(r.output, workspace.root());
    out.timed_out = r.timed_out;
    out.wall_time = r.wall_time;
    return out;
}

ExecutionResult ExecEnv::run_tests(const Workspace& workspace, const std::vector<std::string>& tests) const {
    ExecutionResult out;
    out.phase = Phase::Test;
    for (std::size_t i = 0; i < tests.size(); ++i) {
        const auto& test = tests[i];
        const auto cmd = render_command(profile_.test_command, {{"workdir", workspace.root().string()},
                                                                {"test_path", test},
                                                                {"test_name", fs::path(test).stem().string()}});
        const auto r = run_shell(cmd, workspace.root().string(), timeout(), profile_.env_allowlist, output_cap_);
        check_spawned(r, cmd);
        out.wall_time += r.wall_time;
        if (r.timed_out) {
            out.timed_out = true;
            out.output += "--- " + test + ": timed out\n" + scrub(r.output, workspace.root());
            for (std::size_t j = i; j < tests.size(); ++j) out.failed.push_back(tests[j]);
            break;
        }
        if (r.exit_code == 0) {
            out.passed.push_back(test);
        } else {
            out.failed.push_back(test);
            out.output += "--- " + test + ": exit " + std::to_string(r.exit_code) + "\n" + scrub(r.output, workspace.root());
        }
    }
    out.exit_status = out.failed.empty() ? 0 : 1;
    out.output = text::tail(out.output, output_cap_);
    return out;
}

}  // namespace intentrepair::exec
