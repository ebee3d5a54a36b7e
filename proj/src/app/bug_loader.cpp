#include "intentrepair/app/bug_loader.hpp"

#include <algorithm>
#include <filesystem>

#include "intentrepair/core/json_io.hpp"
#include "intentrepair/error.hpp"
#include "intentrepair/util/text.hpp"

namespace fs = std::filesystem;

namespace intentrepair::app {

namespace {

std::vector<SourceFile> read_tree(const fs::path& root, const fs::path& sub, const fs::path& strip) {
    std::vector<SourceFile> out;
    const auto dir = root / sub;
    if (!fs::is_directory(dir)) return out;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const auto name = entry.path().filename().string();
        if (name.starts_with('.') || entry.path().extension() == ".pyc") continue;
        const auto rel = fs::relative(entry.path(), root / strip).generic_string();
        out.push_back({rel, text::read_file(entry.path().string())});
    }
    std::sort(out.begin(), out.end(), [](const SourceFile& a, const SourceFile& b) { return a.path < b.path; });
    return out;
}

}  // namespace

BugCase load_bug(const std::string& dir) {
    const fs::path root = fs::absolute(dir);
    const auto manifest_path = root / "bug.json";
    if (!fs::exists(manifest_path)) throw Error(ErrorKind::InvalidInput, "no bug.json in '" + root.string() + "'");

    Json m;
    try {
        m = Json::parse(text::read_file(manifest_path.string()));
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::InvalidInput, manifest_path.string() + ": " + e.what());
    }

    BugCase bug;
    try {
        bug.id = m.at("id").get<std::string>();
        bug.buggy_sources = read_tree(root, "src", "");
        bug.focus_path = m.value("focus", bug.buggy_sources.empty() ? std::string{} : bug.buggy_sources.front().path);

        const auto all_tests = read_tree(root, "failing-tests", "");
        if (m.contains("failing_tests")) {
            for (const auto& p : m.at("failing_tests")) {
                const auto path = p.get<std::string>();
                auto it = std::find_if(all_tests.begin(), all_tests.end(),
                                       [&](const SourceFile& f) { return f.path == path; });
                if (it == all_tests.end()) throw Error(ErrorKind::InvalidInput, "failing test '" + path + "' not found");
                bug.failing_tests.push_back(*it);
            }
        } else {
            bug.failing_tests = all_tests;
        }

        for (const auto& e : m.value("error_messages", Json::array())) bug.error_messages.push_back(e.get<std::string>());
        bug.reference_patch = read_tree(root, "reference-patch", "reference-patch");
        bug.toolchain_path = (root / m.at("toolchain").get<std::string>()).lexically_normal().string();
        for (const auto& f : m.value("known_faults", Json::array())) bug.known_faults.push_back(f.get<Location>());
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::InvalidInput, manifest_path.string() + ": " + e.what());
    }
    bug.validate();
    return bug;
}

}  // namespace intentrepair::app
