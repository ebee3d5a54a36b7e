#pragma once

// Shared fixtures and independent oracles for the unit and acceptance tests.
// The oracles deliberately avoid the library's own helpers.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "intentrepair/core/model.hpp"
#include "intentrepair/llm/backends.hpp"

namespace support {

namespace fs = std::filesystem;

inline fs::path fixture_dir() { return fs::path(INTENTREPAIR_FIXTURE_DIR); }
inline fs::path corpus_dir() { return fixture_dir() / "corpus"; }
inline fs::path repair_binary() { return fs::path(INTENTREPAIR_REPAIR_BIN); }

/// Fresh directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag = "t") {
        static std::mt19937_64 rng{std::random_device{}()};
        path_ = fs::temp_directory_path() / ("intentrepair-test-" + tag + "-" + std::to_string(rng()));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const fs::path& path() const { return path_; }
    std::string str() const { return path_.string(); }

private:
    fs::path path_;
};

inline std::string fenced(const std::string& tag, const std::string& json) {
    return "Here you go.\n\n```" + tag + "\n" + json + "\n```\n";
}

inline intentrepair::llm::MockRule rule(std::vector<std::string> match, std::string response, int times = 1,
                                        intentrepair::TokenUsage usage = {10, 5}) {
    intentrepair::llm::MockRule r;
    r.match = std::move(match);
    r.response = std::move(response);
    r.times = times;
    r.usage = usage;
    return r;
}

/// Row-by-row count of differing outputs over rows where both columns are
/// present. Returns {different, compared}.
inline std::pair<std::int64_t, std::int64_t> brute_force_score(const std::vector<std::optional<std::string>>& a,
                                                               const std::vector<std::optional<std::string>>& b) {
    std::int64_t different = 0;
    std::int64_t compared = 0;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (!a[i] || !b[i]) continue;
        ++compared;
        if (*a[i] != *b[i]) ++different;
    }
    return {different, compared};
}

/// ceil(7n/10) in integer arithmetic.
inline std::size_t ceil_seven_tenths(std::size_t n) { return (7 * n + 9) / 10; }

/// Any of the first n is correct-exact or correct-believed.
inline bool brute_force_top_at_n(const std::vector<intentrepair::Classification>& ordered, int n) {
    for (int i = 0; i < n && i < static_cast<int>(ordered.size()); ++i) {
        const auto c = ordered[static_cast<std::size_t>(i)];
        if (c == intentrepair::Classification::CorrectExact || c == intentrepair::Classification::CorrectBelieved)
            return true;
    }
    return false;
}

/// Inserts random spaces, tabs and newlines next to existing whitespace or at
/// token boundaries without joining or splitting tokens.
inline std::string inject_whitespace(const std::string& s, std::mt19937& rng) {
    static const char* kPads[] = {" ", "  ", "\t", "\n", " \n\t"};
    std::uniform_int_distribution<int> pick(0, 4);
    std::bernoulli_distribution coin(0.3);
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const bool ws = s[i] == ' ' || s[i] == '\t' || s[i] == '\n';
        out += s[i];
        if (ws && coin(rng)) out += kPads[pick(rng)];
    }
    if (coin(rng)) out = std::string(kPads[pick(rng)]) + out;
    if (coin(rng)) out += kPads[pick(rng)];
    return out;
}

}  // namespace support
