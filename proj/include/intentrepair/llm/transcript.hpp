#pragma once

#include <cstdint>
#include <fstream>
#include <mutex>
#include <string>
#include <vector>

#include "intentrepair/llm/chat.hpp"

namespace intentrepair::llm {

/// SHA-256 (hex) over the canonical request: message contents with
/// whitespace collapsed, params as a key-sorted object. Field order and
/// incidental whitespace do not change the digest.
std::string request_digest(const Conversation& conversation);

struct TranscriptEntry {
    std::string request_digest;
    Conversation request;
    ChatMessage response;
    TokenUsage usage;
    std::int64_t sequence_number = 0;

    bool operator==(const TranscriptEntry&) const = default;
};

std::string to_json_line(const TranscriptEntry& entry);
TranscriptEntry parse_json_line(const std::string& line);

/// Reads a newline-delimited JSON transcript. Blank lines are skipped.
std::vector<TranscriptEntry> read_transcript(const std::string& path);

/// Appends entries to a transcript file, one JSON object per line.
class TranscriptWriter {
public:
    /// Truncates any existing file.
    explicit TranscriptWriter(const std::string& path);

    void append(const TranscriptEntry& entry);
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::mutex mutex_;
    std::ofstream out_;
};

}  // namespace intentrepair::llm
