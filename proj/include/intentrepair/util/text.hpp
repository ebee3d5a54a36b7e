#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace intentrepair::text {

/// Every whitespace run becomes one space; leading and trailing whitespace
/// is dropped.
std::string collapse_whitespace(std::string_view s);

std::string trim(std::string_view s);

/// Splits on '\n'. A trailing newline does not produce an empty last line.
std::vector<std::string> split_lines(std::string_view s);

std::string join_lines(const std::vector<std::string>& lines, bool trailing_newline);

/// Source listing with right-aligned 1-based line numbers ("  12 | code").
std::string numbered(std::string_view source, int first_line = 1);

/// Last `max_bytes` bytes of `s`, prefixed with a marker when cut.
std::string tail(std::string_view s, std::size_t max_bytes);

bool contains(std::string_view haystack, std::string_view needle);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace intentrepair::text
