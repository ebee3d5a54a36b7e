#pragma once

#include <string>
#include <string_view>

namespace intentrepair::text {

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

}  // namespace intentrepair::text
