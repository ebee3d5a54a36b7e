#include "intentrepair/exec/patching.hpp"

#include <algorithm>
#include <cstdlib>

#include "intentrepair/util/text.hpp"

namespace intentrepair::exec {

namespace {

struct Resolved {
    const PatchEdit* edit;
    int start;  // 1-based
    int count;  // lines replaced
};

std::string block(const std::vector<std::string>& lines, int start, int count) {
    std::string out;
    for (int i = 0; i < count; ++i) {
        out += lines[static_cast<std::size_t>(start - 1 + i)];
        out += '\n';
    }
    return out;
}

std::string describe(const PatchEdit& e) {
    return e.path + ":" + std::to_string(e.start_line) + "-" + std::to_string(e.end_line);
}

}  // namespace

std::optional<int> locate_anchor(const std::string& file_text, const PatchEdit& edit) {
    const auto target = text::collapse_whitespace(edit.original);
    if (target.empty()) return std::nullopt;
    const auto lines = text::split_lines(file_text);
    const int count = static_cast<int>(text::split_lines(edit.original).size());
    const int total = static_cast<int>(lines.size());

    std::optional<int> best;
    for (int s = edit.start_line - kAnchorWindow; s <= edit.start_line + kAnchorWindow; ++s) {
        if (s < 1 || s + count - 1 > total) continue;
        if (text::collapse_whitespace(block(lines, s, count)) != target) continue;
        if (!best || std::abs(s - edit.start_line) < std::abs(*best - edit.start_line)) best = s;
    }
    return best;
}

ApplyOutcome apply_edits(const FileMap& files, const std::vector<PatchEdit>& edits) {
    ApplyOutcome out;
    if (edits.empty()) {
        out.mismatch = "patch has no edits";
        return out;
    }

    std::map<std::string, std::vector<Resolved>> by_file;
    for (const auto& edit : edits) {
        auto it = files.find(edit.path);
        if (it == files.end()) {
            out.mismatch = "edit " + describe(edit) + ": file is not part of the workspace";
            return out;
        }
        const auto start = locate_anchor(it->second, edit);
        if (!start) {
            out.mismatch = "edit " + describe(edit) + ": original text not found within +/-" +
                           std::to_string(kAnchorWindow) + " lines";
            return out;
        }
        by_file[edit.path].push_back({&edit, *start, static_cast<int>(text::split_lines(edit.original).size())});
    }

    for (auto& [path, resolved] : by_file) {
        std::sort(resolved.begin(), resolved.end(), [](const Resolved& a, const Resolved& b) { return a.start > b.start; });
        for (std::size_t i = 1; i < resolved.size(); ++i) {
            // resolved[i] starts above resolved[i-1]; it must end before it.
            if (resolved[i].start + resolved[i].count - 1 >= resolved[i - 1].start) {
                out.mismatch = "edits " + describe(*resolved[i].edit) + " and " + describe(*resolved[i - 1].edit) +
                               " overlap";
                return out;
            }
        }

        const auto& original = files.at(path);
        auto lines = text::split_lines(original);
        const bool trailing_newline = !original.empty() && original.back() == '\n';
        for (const auto& r : resolved) {
            const auto replacement = text::split_lines(r.edit->replacement);
            auto first = lines.begin() + (r.start - 1);
            lines.erase(first, first + r.count);
            lines.insert(lines.begin() + (r.start - 1), replacement.begin(), replacement.end());
        }
        out.files[path] = text::join_lines(lines, trailing_newline);
    }
    out.applied = true;
    return out;
}

}  // namespace intentrepair::exec
