#include "intentrepair/app/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "intentrepair/app/bug_loader.hpp"
#include "intentrepair/app/session_runner.hpp"
#include "intentrepair/error.hpp"
#include "intentrepair/exec/environment.hpp"
#include "intentrepair/llm/backends.hpp"
#include "intentrepair/llm/gateway.hpp"
#include "intentrepair/util/text.hpp"
#include "intentrepair/validator/validator.hpp"

namespace fs = std::filesystem;

namespace intentrepair::app {

namespace {

constexpr int kTopAtN[] = {1, 3, 5};

}  // namespace

std::unique_ptr<llm::Backend> make_backend(const RunConfig& config, const std::string& bug_dir,
                                           const std::string& bug_id) {
    switch (config.backend) {
        case BackendKind::Live: {
            llm::LiveConfig live;
            live.endpoint = config.endpoint;
            live.api_key_env = config.api_key_env;
            live.timeout_seconds = config.llm_timeout_seconds;
            return std::make_unique<llm::LiveBackend>(live);
        }
        case BackendKind::Replay: {
            fs::path path = config.transcript.empty() ? fs::path(bug_dir) / "transcript.jsonl" : fs::path(config.transcript);
            if (fs::is_directory(path)) path /= bug_id + ".jsonl";
            if (!fs::exists(path)) throw Error(ErrorKind::InvalidInput, "no transcript at '" + path.string() + "'");
            return std::make_unique<llm::ReplayBackend>(llm::read_transcript(path.string()));
        }
        case BackendKind::Mock: {
            fs::path path = config.mock_script.empty() ? fs::path(bug_dir) / "mock.script" : fs::path(config.mock_script);
            if (fs::is_directory(path)) path /= bug_id + ".script";
            if (!fs::exists(path)) throw Error(ErrorKind::InvalidInput, "no mock script at '" + path.string() + "'");
            return std::make_unique<llm::MockBackend>(llm::MockBackend::load_script(path.string()));
        }
    }
    throw Error(ErrorKind::InvalidConfiguration, "unknown backend");
}

SessionReport run_bug(const std::string& bug_dir, const RunConfig& config, const std::string& record_path) {
    const auto bug = load_bug(bug_dir);
    exec::ExecEnv env(exec::ToolchainProfile::load(bug.toolchain_path), config.scratch_dir);
    auto backend = make_backend(config, bug_dir, bug.id);
    std::unique_ptr<llm::TranscriptWriter> recorder;
    if (!record_path.empty()) recorder = std::make_unique<llm::TranscriptWriter>(record_path);
    llm::RetryPolicy retry;
    retry.attempts = config.llm_retries;
    llm::Gateway gateway(*backend, retry, config.token_budget, recorder.get());
    return run_session(bug, config, gateway, env);
}

std::string emit_report(const SessionReport& report, const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create '" + out_dir + "': " + ec.message());
    const auto path = (fs::path(out_dir) / "report.json").string();
    text::write_file(path, dump_report(report));
    return path;
}

void print_summary(const SessionReport& report, std::ostream& out) {
    out << "Bug " << report.bug_id << ": " << to_string(report.outcome.status);
    if (!report.outcome.failure_stage.empty()) out << " at stage " << report.outcome.failure_stage;
    out << "\n";
    if (!report.outcome.message.empty()) out << "  " << report.outcome.message << "\n";

    if (!report.intents.empty()) out << "\nInferred program intents:\n";
    for (const auto& intent : report.intents) {
        out << "  " << intent.ordinal << ". " << intent.description;
        if (intent.adversarial_score_vs_first) {
            out << " [score " << intent.adversarial_score_vs_first->str() << ", "
                << (intent.accepted ? "accepted" : "below threshold") << "]";
        }
        if (report.selected_intent == intent.ordinal) out << " <- selected";
        out << "\n";
    }

    std::vector<const Patch*> ordered;
    for (const auto& p : report.patches) ordered.push_back(&p);
    if (report.selected_intent) {
        const auto selected = intent_id_for(*report.selected_intent);
        std::stable_partition(ordered.begin(), ordered.end(), [&](const Patch* p) { return p->intent_id == selected; });
    }
    if (!ordered.empty()) out << "\nPatches:\n";
    for (const auto* p : ordered) {
        out << "  " << p->id << " (" << p->intent_id << ", round " << p->refinement_round
            << "): " << to_string(p->classification) << "\n";
    }
    out << "\nTokens: " << report.tokens.total.total() << " over " << report.tokens.calls << " calls\n";
    for (const auto& w : report.warnings) out << "warning: " << w << "\n";
}

Json CorpusSummary::to_json() const {
    Json j;
    Json entries = Json::array();
    for (const auto& b : bugs) {
        Json e;
        e["bug"] = b.bug_id;
        e["outcome"] = b.outcome;
        e["best_classification"] = b.best_classification;
        e["tokens"] = b.tokens;
        if (!b.error.empty()) e["error"] = b.error;
        entries.push_back(std::move(e));
    }
    j["bugs"] = std::move(entries);
    Json counts = Json::object();
    for (const auto& [k, v] : patch_counts) counts[k] = v;
    j["patch_counts"] = std::move(counts);
    j["bugs_plausible"] = bugs_plausible;
    j["bugs_correct"] = bugs_correct;
    j["overfitting_discards"] = overfitting_discards;
    j["failures"] = failures;
    Json top = Json::object();
    for (const auto& [n, v] : top_at_n) top["top@" + std::to_string(n)] = v;
    j["top_at_n"] = std::move(top);
    std::ostringstream mean;
    mean << std::fixed << std::setprecision(1) << mean_tokens;
    j["mean_tokens"] = mean.str();
    return j;
}

CorpusSummary run_corpus(const std::string& dir, const RunConfig& config, const std::string& out_dir) {
    std::vector<fs::path> bug_dirs;
    if (!fs::is_directory(dir)) throw Error(ErrorKind::InvalidInput, "corpus '" + dir + "' is not a directory");
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_directory() && fs::exists(entry.path() / "bug.json")) bug_dirs.push_back(entry.path());
    std::sort(bug_dirs.begin(), bug_dirs.end());

    struct Result {
        std::optional<SessionReport> report;
        std::string bug_id;
        std::string error;
    };
    std::vector<Result> results(bug_dirs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < bug_dirs.size(); i = next++) {
            auto& r = results[i];
            r.bug_id = bug_dirs[i].filename().string();
            try {
                r.report = run_bug(bug_dirs[i].string(), config);
                r.bug_id = r.report->bug_id;
                emit_report(*r.report, (fs::path(out_dir) / r.bug_id).string());
            } catch (const std::exception& e) {
                r.error = e.what();
            }
        }
    };
    const auto pool = std::min<std::size_t>(static_cast<std::size_t>(config.workers), std::max<std::size_t>(1, bug_dirs.size()));
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < pool; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    CorpusSummary s;
    for (int n : kTopAtN) s.top_at_n[n] = 0;
    std::int64_t token_sum = 0;
    for (const auto& r : results) {
        CorpusEntry e;
        e.bug_id = r.bug_id;
        if (!r.report) {
            e.outcome = "error";
            e.error = r.error;
            ++s.failures;
            s.bugs.push_back(std::move(e));
            continue;
        }
        const auto& rep = *r.report;
        e.outcome = std::string(to_string(rep.outcome.status));
        e.tokens = rep.tokens.total.total();
        token_sum += e.tokens;
        if (rep.outcome.status == OutcomeStatus::Error || rep.outcome.status == OutcomeStatus::BudgetExhausted) {
            ++s.failures;
            e.error = rep.outcome.message;
        }

        std::vector<Classification> ordered;
        std::optional<Classification> best;
        bool passing_original = false;
        bool survived = false;
        for (const auto& p : rep.patches) {
            ordered.push_back(p.classification);
            ++s.patch_counts[std::string(to_string(p.classification))];
            if (!best || selection_quality(p.classification) > selection_quality(*best)) best = p.classification;
            const bool passes = p.classification == Classification::Plausible ||
                                p.classification == Classification::LikelyOverfitting || is_correct(p.classification);
            passing_original = passing_original || passes;
            survived = survived || (passes && p.classification != Classification::LikelyOverfitting);
        }
        e.best_classification = best ? std::string(to_string(*best)) : "none";
        if (survived) ++s.bugs_plausible;
        if (passing_original && !survived) ++s.overfitting_discards;
        if (std::any_of(ordered.begin(), ordered.end(), is_correct)) ++s.bugs_correct;
        for (int n : kTopAtN)
            if (validator::top_at_n(ordered, n)) ++s.top_at_n[n];
        s.bugs.push_back(std::move(e));
    }
    const auto finished = std::count_if(results.begin(), results.end(), [](const Result& r) { return r.report.has_value(); });
    s.mean_tokens = finished == 0 ? 0.0 : static_cast<double>(token_sum) / static_cast<double>(finished);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    text::write_file((fs::path(out_dir) / "corpus-summary.json").string(), s.to_json().dump(2) + "\n");
    return s;
}

void print_corpus_summary(const CorpusSummary& s, std::ostream& out) {
    out << std::left << std::setw(20) << "bug" << std::setw(22) << "outcome" << std::setw(22) << "best patch"
        << "tokens\n";
    for (const auto& b : s.bugs) {
        out << std::setw(20) << b.bug_id << std::setw(22) << b.outcome << std::setw(22) << b.best_classification
            << b.tokens << "\n";
    }
    out << "\nbugs: " << s.bugs.size() << ", plausible: " << s.bugs_plausible << ", correct: " << s.bugs_correct
        << ", overfitting discards: " << s.overfitting_discards << ", failures: " << s.failures << "\n";
    out << "Top@N:";
    for (const auto& [n, v] : s.top_at_n) out << "  " << n << ": " << v;
    out << "\nmean tokens per bug: " << std::fixed << std::setprecision(1) << s.mean_tokens << "\n";
    if (!s.patch_counts.empty()) {
        out << "patches:";
        for (const auto& [k, v] : s.patch_counts) out << "  " << k << " " << v;
        out << "\n";
    }
}

}  // namespace intentrepair::app
