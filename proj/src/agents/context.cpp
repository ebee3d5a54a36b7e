#include "intentrepair/agents/context.hpp"

#include <algorithm>
#include <sstream>

#include "intentrepair/util/text.hpp"

namespace intentrepair::agents {

namespace {

int indentation(const std::string& line) {
    int n = 0;
    for (char c : line) {
        if (c == ' ') {
            ++n;
        } else if (c == '\t') {
            n += 4;
        } else {
            break;
        }
    }
    return n;
}

bool blank(const std::string& line) { return text::trim(line).empty(); }

// A function or method signature: Python "def", or a parenthesised
// signature opening a brace block that is not a control statement.
bool function_header(const std::string& line) {
    const auto t = text::trim(line);
    if (t.empty()) return false;
    if (t.starts_with("def ") || t.starts_with("async def ")) return true;
    if (t.find('(') == std::string::npos || (t.back() != '{' && t.back() != ')')) return false;
    static const char* kControl[] = {"if", "for", "while", "switch", "catch", "else", "do", "try", "return", "synchronized"};
    const auto word = t.substr(0, t.find_first_of(" (\t"));
    for (const char* k : kControl)
        if (word == k) return false;
    return t.find('=') == std::string::npos || t.find('=') > t.find('(');
}

std::string number_line(int n, int width, const std::string& line) {
    auto s = std::to_string(n);
    return std::string(static_cast<std::size_t>(std::max(0, width - static_cast<int>(s.size()))), ' ') + s + " | " +
           line + "\n";
}

}  // namespace

std::string render_file(const SourceFile& file, int line_budget, const std::vector<Location>& regions) {
    const auto lines = text::split_lines(file.text);
    const int total = static_cast<int>(lines.size());
    if (total <= line_budget) return text::numbered(file.text);

    int base_indent = 1 << 20;
    for (const auto& l : lines) {
        if (!blank(l)) base_indent = std::min(base_indent, indentation(l));
    }

    std::vector<bool> keep(lines.size(), false);
    for (int i = 0; i < total; ++i) {
        const auto& l = lines[static_cast<std::size_t>(i)];
        if (blank(l)) continue;
        if (indentation(l) <= base_indent || function_header(l)) keep[static_cast<std::size_t>(i)] = true;
    }
    for (const auto& r : regions) {
        if (r.path != file.path) continue;
        for (int i = std::max(1, r.start_line); i <= std::min(total, r.end_line); ++i) keep[static_cast<std::size_t>(i - 1)] = true;
    }

    const int width = static_cast<int>(std::to_string(total).size());
    std::string out;
    bool gap = false;
    for (int i = 0; i < total; ++i) {
        if (keep[static_cast<std::size_t>(i)]) {
            out += number_line(i + 1, width, lines[static_cast<std::size_t>(i)]);
            gap = false;
        } else if (!gap) {
            out += std::string(static_cast<std::size_t>(width), ' ') + " | ...\n";
            gap = true;
        }
    }
    return out;
}

std::string region_text(const SourceFile& file, const Location& location) {
    const auto lines = text::split_lines(file.text);
    std::vector<std::string> picked;
    for (int i = std::max(1, location.start_line); i <= std::min<int>(static_cast<int>(lines.size()), location.end_line); ++i)
        picked.push_back(lines[static_cast<std::size_t>(i - 1)]);
    return text::join_lines(picked, true);
}

std::string render_region(const SourceFile& file, const Location& location) {
    return text::numbered(region_text(file, location), std::max(1, location.start_line));
}

std::string render_failing_tests(const BugCase& bug) {
    std::ostringstream out;
    for (const auto& t : bug.failing_tests) out << "File: " << t.path << "\n" << t.text << (t.text.ends_with('\n') ? "" : "\n");
    return out.str();
}

std::string render_error_messages(const BugCase& bug) {
    std::ostringstream out;
    for (const auto& m : bug.error_messages) out << m << (m.ends_with('\n') ? "" : "\n");
    return out.str();
}

Location enclosing_function(const SourceFile& file, const Location& location) {
    const auto lines = text::split_lines(file.text);
    const int total = static_cast<int>(lines.size());
    if (location.start_line < 1 || location.start_line > total) return location;

    const int fault_indent = indentation(lines[static_cast<std::size_t>(location.start_line - 1)]);
    int header = -1;
    for (int i = location.start_line; i >= 1; --i) {
        const auto& l = lines[static_cast<std::size_t>(i - 1)];
        if (blank(l)) continue;
        if (function_header(l) && (indentation(l) < fault_indent || i == location.start_line)) {
            header = i;
            break;
        }
    }
    if (header < 0) return location;

    const int header_indent = indentation(lines[static_cast<std::size_t>(header - 1)]);
    int end = header;
    for (int i = header + 1; i <= total; ++i) {
        const auto& l = lines[static_cast<std::size_t>(i - 1)];
        if (blank(l)) continue;
        if (indentation(l) <= header_indent) {
            const auto t = text::trim(l);
            if (t.front() == '}') end = i;
            break;
        }
        end = i;
    }
    Location out{file.path, header, std::max(end, location.end_line)};
    return out;
}

}  // namespace intentrepair::agents
