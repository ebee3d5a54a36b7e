#include "intentrepair/app/select.hpp"

#include <istream>
#include <ostream>

#include "intentrepair/app/session_runner.hpp"
#include "intentrepair/core/json_io.hpp"
#include "intentrepair/error.hpp"
#include "intentrepair/util/text.hpp"

namespace intentrepair::app {

namespace {

void describe(const SessionReport& report, std::ostream& out) {
    for (const auto& intent : report.intents) {
        out << "Intent " << intent.ordinal << ": " << intent.description << "\n";
        if (intent.adversarial_score_vs_first)
            out << "  adversarial score vs intent 1: " << intent.adversarial_score_vs_first->str()
                << (intent.accepted ? "" : " (below threshold)") << "\n";
        if (const auto* tests = report.tests_for(intent.id)) {
            for (const auto& t : tests->tests) {
                if (!t.usable()) continue;
                out << "  test " << t.index << ": " << t.input_key << " -> " << t.expected_output << "\n";
            }
        }
        for (const auto& p : report.patches) {
            if (p.intent_id == intent.id) out << "  " << p.id << ": " << to_string(p.classification) << "\n";
        }
    }
}

std::optional<int> parse_ordinal(const std::string& s, int count) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used == s.size() && v >= 1 && v <= count) return v;
    } catch (const std::exception&) {
    }
    return std::nullopt;
}

}  // namespace

int auto_select(const SessionReport& report) {
    int best_ordinal = report.intents.empty() ? 1 : report.intents.front().ordinal;
    int best_quality = -1;
    for (const auto& intent : report.intents) {
        for (const auto& p : report.patches) {
            if (p.intent_id != intent.id) continue;
            const int q = selection_quality(p.classification);
            if (q > best_quality) {
                best_quality = q;
                best_ordinal = intent.ordinal;
            }
        }
    }
    return best_ordinal;
}

SessionReport select_intent(SessionReport report, const std::string& choice, std::istream& in, std::ostream& out) {
    if (report.intents.empty()) throw Error(ErrorKind::InvalidInput, "the report has no intents to select from");
    const int count = static_cast<int>(report.intents.size());

    if (choice == "auto") {
        report.selected_intent = auto_select(report);
        return report;
    }
    if (choice != "ask") {
        auto v = parse_ordinal(choice, count);
        if (!v) throw Error(ErrorKind::InvalidInput, "intent choice '" + choice + "' is out of range 1.." + std::to_string(count));
        report.selected_intent = *v;
        return report;
    }

    describe(report, out);
    std::string line;
    while (true) {
        out << "Select intent [1-" << count << "]: " << std::flush;
        if (!std::getline(in, line)) {
            report.selected_intent = auto_select(report);
            out << "\nno answer, selected intent " << *report.selected_intent << "\n";
            return report;
        }
        if (auto v = parse_ordinal(text::trim(line), count)) {
            report.selected_intent = *v;
            return report;
        }
        out << "Please enter a number between 1 and " << count << ".\n";
    }
}

}  // namespace intentrepair::app
