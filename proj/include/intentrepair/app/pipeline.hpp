#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "intentrepair/app/config.hpp"
#include "intentrepair/core/session.hpp"
#include "intentrepair/llm/chat.hpp"

namespace intentrepair::app {

/// Backend for one bug. Replay reads config.transcript, or
/// `<bug_dir>/transcript.jsonl` when unset; a directory transcript path means
/// `<dir>/<bug id>.jsonl`. Mock reads config.mock_script, or
/// `<bug_dir>/mock.script`.
std::unique_ptr<llm::Backend> make_backend(const RunConfig& config, const std::string& bug_dir,
                                           const std::string& bug_id);

/// Loads the bug and its toolchain, wires gateway and environment, and runs
/// the session. With `record_path` every LLM exchange is also written there.
SessionReport run_bug(const std::string& bug_dir, const RunConfig& config, const std::string& record_path = {});

/// Writes `<out_dir>/report.json` and returns its path.
std::string emit_report(const SessionReport& report, const std::string& out_dir);

/// Terminal summary: outcome, intents in plain language with their scores,
/// then patches with the selected intent's patches first.
void print_summary(const SessionReport& report, std::ostream& out);

struct CorpusEntry {
    std::string bug_id;
    std::string outcome;
    std::string best_classification;
    std::int64_t tokens = 0;
    std::string error;
};

struct CorpusSummary {
    std::vector<CorpusEntry> bugs;
    std::map<std::string, int> patch_counts;  // classification -> patches
    int bugs_plausible = 0;                   // some patch passes the original tests and survives filtering
    int bugs_correct = 0;
    int overfitting_discards = 0;  // bugs whose only original-passing patches were all flagged overfitting
    int failures = 0;
    std::map<int, int> top_at_n;  // n -> bugs with a correct patch among the first n
    double mean_tokens = 0;

    Json to_json() const;
};

/// Runs every bug directory (one containing bug.json) below `dir` in a pool
/// of config.workers threads. Reports go to `<out_dir>/<bug id>/report.json`
/// and the aggregate to `<out_dir>/corpus-summary.json`.
CorpusSummary run_corpus(const std::string& dir, const RunConfig& config, const std::string& out_dir);

void print_corpus_summary(const CorpusSummary& summary, std::ostream& out);

}  // namespace intentrepair::app
