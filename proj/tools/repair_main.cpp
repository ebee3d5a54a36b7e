// Command-line entry point: run, corpus, replay-record and verdict.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"

#include "intentrepair/app/config.hpp"
#include "intentrepair/app/pipeline.hpp"
#include "intentrepair/app/select.hpp"
#include "intentrepair/app/session_runner.hpp"
#include "intentrepair/core/json_io.hpp"
#include "intentrepair/error.hpp"
#include "intentrepair/util/text.hpp"
#include "intentrepair/validator/validator.hpp"

namespace fs = std::filesystem;
using namespace intentrepair;

namespace {

struct RunArgs {
    std::string bug;
    std::string config;
    std::string backend;
    std::string transcript;
    std::string mock_script;
    std::string record;
    std::string select = "auto";
    std::string out;
    std::string scratch;
};

app::RunConfig load_config(const RunArgs& a) {
    auto c = app::RunConfig::load(a.config);
    if (!a.backend.empty()) c.backend = app::parse_backend(a.backend);
    c.bug_dir = a.bug;
    c.transcript = a.transcript;
    c.mock_script = a.mock_script;
    c.out_dir = a.out;
    c.scratch_dir = a.scratch;
    return c;
}

int finish_run(SessionReport report, const RunArgs& a) {
    if (!report.intents.empty()) report = app::select_intent(std::move(report), a.select, std::cin, std::cout);
    const auto path = app::emit_report(report, a.out);
    app::print_summary(report, std::cout);
    std::cout << "report: " << path << "\n";
    return app::exit_code(report);
}

void add_run_options(CLI::App* cmd, RunArgs& a, bool record_mode) {
    cmd->add_option("--bug", a.bug, "bug directory containing bug.json")->required()->check(CLI::ExistingDirectory);
    cmd->add_option("--config", a.config, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", a.out, "output directory for report.json")->required();
    cmd->add_option("--mock-script", a.mock_script, "scripted responses for the mock backend");
    cmd->add_option("--scratch", a.scratch, "directory for temporary workspaces");
    cmd->add_option("--select", a.select, "intent selection: auto, ask or an ordinal")->capture_default_str();
    if (record_mode) {
        cmd->add_option("--transcript", a.record, "transcript file to write")->required();
    } else {
        cmd->add_option("--backend", a.backend, "live, replay or mock (overrides the config)")
            ->check(CLI::IsMember({"live", "replay", "mock"}));
        cmd->add_option("--transcript", a.transcript, "recorded transcript for the replay backend");
        cmd->add_option("--record", a.record, "also write every LLM exchange to this transcript");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Intent-driven automated program repair"};
    cli.require_subcommand(1);

    RunArgs run_args;
    auto* run = cli.add_subcommand("run", "repair one bug");
    add_run_options(run, run_args, false);

    RunArgs record_args;
    auto* record = cli.add_subcommand("replay-record",
                                      "repair one bug with the live backend (or --mock-script) while writing the transcript");
    add_run_options(record, record_args, true);

    std::string corpus_dir, corpus_config, corpus_backend, corpus_transcripts, corpus_mocks, corpus_out, corpus_scratch;
    int corpus_workers = 0;
    auto* corpus = cli.add_subcommand("corpus", "repair every bug below a directory");
    corpus->add_option("--dir", corpus_dir, "corpus directory")->required()->check(CLI::ExistingDirectory);
    corpus->add_option("--config", corpus_config, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
    corpus->add_option("--out", corpus_out, "output directory")->required();
    corpus->add_option("--backend", corpus_backend, "live, replay or mock")->check(CLI::IsMember({"live", "replay", "mock"}));
    corpus->add_option("--transcripts", corpus_transcripts, "directory of <bug id>.jsonl transcripts");
    corpus->add_option("--mock-scripts", corpus_mocks, "directory of <bug id>.script mock scripts");
    corpus->add_option("--workers", corpus_workers, "worker threads (overrides the config)");
    corpus->add_option("--scratch", corpus_scratch, "directory for temporary workspaces");

    std::string verdict_report, verdict_patch, verdict_value, verdict_reviewer;
    auto* verdict = cli.add_subcommand("verdict", "record a reviewer verdict on a patch in a report");
    verdict->add_option("--report", verdict_report, "report.json to update")->required()->check(CLI::ExistingFile);
    verdict->add_option("--patch", verdict_patch, "patch id")->required();
    verdict->add_option("--verdict", verdict_value, "believed-correct or overfitting")
        ->required()
        ->check(CLI::IsMember({"believed-correct", "overfitting"}));
    verdict->add_option("--reviewer", verdict_reviewer, "reviewer name, or llm")->required();

    CLI11_PARSE(cli, argc, argv);

    try {
        if (run->parsed()) {
            auto config = load_config(run_args);
            return finish_run(app::run_bug(run_args.bug, config, run_args.record), run_args);
        }
        if (record->parsed()) {
            auto config = load_config(record_args);
            config.backend = record_args.mock_script.empty() ? app::BackendKind::Live : app::BackendKind::Mock;
            return finish_run(app::run_bug(record_args.bug, config, record_args.record), record_args);
        }
        if (corpus->parsed()) {
            auto config = app::RunConfig::load(corpus_config);
            if (!corpus_backend.empty()) config.backend = app::parse_backend(corpus_backend);
            if (corpus_workers > 0) config.workers = corpus_workers;
            config.transcript = corpus_transcripts;
            config.mock_script = corpus_mocks;
            config.scratch_dir = corpus_scratch;
            const auto summary = app::run_corpus(corpus_dir, config, corpus_out);
            app::print_corpus_summary(summary, std::cout);
            return summary.failures == 0 ? 0 : 1;
        }
        if (verdict->parsed()) {
            auto report = parse_report(text::read_file(verdict_report));
            auto* patch = report.find_patch(verdict_patch);
            if (patch == nullptr) throw Error(ErrorKind::InvalidInput, "no patch '" + verdict_patch + "' in the report");
            const auto now = validator::record_verdict(*patch, parse_verdict(verdict_value), verdict_reviewer);
            const auto dir = fs::path(verdict_report).parent_path();
            validator::append_verdict_log((dir / "verdicts.jsonl").string(), *patch, app::iso_timestamp());
            text::write_file(verdict_report, dump_report(report));
            std::cout << verdict_patch << ": " << to_string(now) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
