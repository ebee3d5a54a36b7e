#include "intentrepair/validator/validator.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>

#include "intentrepair/core/json_io.hpp"
#include "intentrepair/error.hpp"
#include "intentrepair/exec/patching.hpp"
#include "intentrepair/util/text.hpp"

namespace intentrepair::validator {

namespace {

constexpr std::size_t kSectionBytes = 4096;

std::string section(std::string_view label, std::string_view body) {
    return "[" + std::string(label) + "]\n" + text::tail(body, kSectionBytes) + (body.ends_with('\n') ? "" : "\n");
}

std::vector<std::string> paths_of(const std::vector<SourceFile>& files) {
    std::vector<std::string> out;
    for (const auto& f : files) out.push_back(f.path);
    return out;
}

std::vector<std::string> ids_for(const std::vector<GeneratedTest>& suite, const std::vector<std::string>& failed_paths) {
    std::vector<std::string> out;
    for (const auto& t : suite)
        if (std::find(failed_paths.begin(), failed_paths.end(), t.path) != failed_paths.end()) out.push_back(t.id);
    return out;
}

}  // namespace

bool exact_match(std::string_view patched, std::string_view reference) {
    return text::collapse_whitespace(patched) == text::collapse_whitespace(reference);
}

bool matches_reference(const BugCase& bug, const std::vector<PatchEdit>& edits) {
    if (bug.reference_patch.empty()) return false;
    exec::FileMap files;
    for (const auto& f : bug.buggy_sources) files[f.path] = f.text;
    auto outcome = exec::apply_edits(files, edits);
    if (!outcome.applied) return false;
    for (const auto& ref : bug.reference_patch) {
        auto it = outcome.files.find(ref.path);
        const std::string* patched = it != outcome.files.end() ? &it->second : nullptr;
        if (patched == nullptr) {
            auto src = files.find(ref.path);
            if (src == files.end()) return false;
            patched = &src->second;
        }
        if (!exact_match(*patched, ref.text)) return false;
    }
    return true;
}

Evaluation classify_patch(const std::vector<PatchEdit>& edits, const BugCase& bug, const exec::ExecEnv& env,
                          const std::vector<GeneratedTest>& adversarial_suite, const std::string& provenance) {
    Evaluation ev;
    auto& s = ev.summary;
    try {
        auto ws = env.create_workspace(bug, provenance);
        auto applied = env.apply_patch(ws, edits);
        if (!applied.applied) {
            ev.classification = Classification::CompileError;
            s.diagnostic = applied.mismatch;
            ev.feedback = section("patch application", applied.mismatch);
            return ev;
        }
        s.applied = true;

        auto compiled = env.compile(ws);
        if (!compiled.success()) {
            ev.classification = Classification::CompileError;
            s.diagnostic = compiled.timed_out ? "compilation timed out" : "compilation failed";
            ev.feedback = section("compiler", compiled.output);
            return ev;
        }
        s.compiled = true;

        auto original = env.run_tests(ws, paths_of(bug.failing_tests));
        if (!original.success()) {
            ev.classification = Classification::NonPlausible;
            s.failed_original_tests = original.failed;
            ev.feedback = section("original tests", original.output);
            return ev;
        }

        if (matches_reference(bug, edits)) {
            ev.classification = Classification::CorrectExact;
            return ev;
        }

        std::vector<std::string> suite_paths;
        for (const auto& t : adversarial_suite) {
            ws.write(t.path, t.source);
            suite_paths.push_back(t.path);
        }
        auto adversarial = env.run_tests(ws, suite_paths);
        if (!adversarial.success()) {
            ev.classification = Classification::LikelyOverfitting;
            s.failed_adversarial_tests = ids_for(adversarial_suite, adversarial.failed);
            ev.feedback = section("adversarial tests", adversarial.output);
            return ev;
        }
        ev.classification = Classification::Plausible;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Environment) throw;
        ev = {};
        ev.classification = Classification::Unvalidated;
        ev.summary.diagnostic = e.what();
    }
    return ev;
}

std::vector<std::string> failing_tests(const std::vector<PatchEdit>& edits, const BugCase& bug,
                                       const exec::ExecEnv& env, const std::vector<GeneratedTest>& suite,
                                       const std::string& provenance) {
    auto ws = env.create_workspace(bug, provenance);
    auto applied = env.apply_patch(ws, edits);
    if (!applied.applied) throw Error(ErrorKind::InvalidInput, "patch does not apply: " + applied.mismatch);
    if (!env.compile(ws).success()) throw Error(ErrorKind::InvalidInput, "patch does not compile");
    std::vector<std::string> paths;
    for (const auto& t : suite) {
        ws.write(t.path, t.source);
        paths.push_back(t.path);
    }
    return ids_for(suite, env.run_tests(ws, paths).failed);
}

Classification record_verdict(Patch& patch, Verdict verdict, const std::string& reviewer) {
    const auto before = patch.classification;
    if (before != Classification::Plausible && before != Classification::LikelyOverfitting)
        throw Error(ErrorKind::Verdict, "patch " + patch.id + " is " + std::string(to_string(before)) +
                                            "; only plausible or likely-overfitting patches take a verdict");
    if (reviewer.empty()) throw Error(ErrorKind::Verdict, "a verdict needs a reviewer");

    VerdictRecord record;
    record.verdict = verdict;
    record.reviewer = reviewer;
    if (verdict == Verdict::BelievedCorrect) {
        record.override_applied = before == Classification::LikelyOverfitting;
        patch.classification = Classification::CorrectBelieved;
    } else {
        patch.classification = Classification::LikelyOverfitting;
    }
    patch.verdict = record;
    return patch.classification;
}

void append_verdict_log(const std::string& path, const Patch& patch, const std::string& timestamp) {
    static std::mutex mutex;
    if (!patch.verdict) throw Error(ErrorKind::Verdict, "patch " + patch.id + " has no verdict to log");
    Json line;
    line["patch_id"] = patch.id;
    line["verdict"] = std::string(to_string(patch.verdict->verdict));
    line["reviewer"] = patch.verdict->reviewer;
    line["override_applied"] = patch.verdict->override_applied;
    line["classification"] = std::string(to_string(patch.classification));
    line["timestamp"] = timestamp;

    std::lock_guard lock(mutex);
    std::ofstream out(path, std::ios::app);
    if (!out) throw Error(ErrorKind::Io, "cannot append to verdict log '" + path + "'");
    out << line.dump() << "\n";
}

bool top_at_n(const std::vector<Classification>& ordered, int n) {
    const auto limit = std::min<std::size_t>(ordered.size(), static_cast<std::size_t>(std::max(0, n)));
    return std::any_of(ordered.begin(), ordered.begin() + static_cast<std::ptrdiff_t>(limit), is_correct);
}

}  // namespace intentrepair::validator
