#include "intentrepair/util/text.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "intentrepair/error.hpp"

namespace intentrepair::text {

namespace {
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
}  // namespace

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending = false;
    for (char c : s) {
        if (is_space(c)) {
            pending = !out.empty();
            continue;
        }
        if (pending) out.push_back(' ');
        pending = false;
        out.push_back(c);
    }
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_lines(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        auto nl = s.find('\n', i);
        if (nl == std::string_view::npos) {
            out.emplace_back(s.substr(i));
            break;
        }
        out.emplace_back(s.substr(i, nl - i));
        i = nl + 1;
    }
    return out;
}

std::string join_lines(const std::vector<std::string>& lines, bool trailing_newline) {
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        out += lines[i];
        if (i + 1 < lines.size() || trailing_newline) out.push_back('\n');
    }
    return out;
}

std::string numbered(std::string_view source, int first_line) {
    const auto lines = split_lines(source);
    std::ostringstream out;
    const int last = first_line + static_cast<int>(lines.size()) - 1;
    const int width = static_cast<int>(std::to_string(std::max(last, 1)).size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto n = std::to_string(first_line + static_cast<int>(i));
        out << std::string(static_cast<std::size_t>(width) - n.size(), ' ') << n << " | " << lines[i] << '\n';
    }
    return out.str();
}

std::string tail(std::string_view s, std::size_t max_bytes) {
    if (s.size() <= max_bytes) return std::string(s);
    return "[... truncated ...]\n" + std::string(s.substr(s.size() - max_bytes));
}

bool contains(std::string_view haystack, std::string_view needle) {
    return haystack.find(needle) != std::string_view::npos;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::Io, "short write to '" + path + "'");
}

}  // namespace intentrepair::text
