#include "intentrepair/core/session.hpp"

#include <algorithm>

#include "intentrepair/error.hpp"

namespace intentrepair {

std::string_view to_string(SessionState s) {
    switch (s) {
        case SessionState::Created: return "Created";
        case SessionState::Localizing: return "Localizing";
        case SessionState::Localized: return "Localized";
        case SessionState::InferringIntents: return "InferringIntents";
        case SessionState::IntentsAccepted: return "IntentsAccepted";
        case SessionState::TestGen: return "TestGen";
        case SessionState::TestsReady: return "TestsReady";
        case SessionState::Patching: return "Patching";
        case SessionState::Validate: return "Validate";
        case SessionState::Report: return "Report";
        case SessionState::Aborted: return "Aborted";
    }
    return "?";
}

std::string_view to_string(SessionEvent e) {
    switch (e) {
        case SessionEvent::StartLocalize: return "StartLocalize";
        case SessionEvent::FaultsLocated: return "FaultsLocated";
        case SessionEvent::StartIntentGen: return "StartIntentGen";
        case SessionEvent::IntentsScored: return "IntentsScored";
        case SessionEvent::StartTestGen: return "StartTestGen";
        case SessionEvent::TestsPrioritized: return "TestsPrioritized";
        case SessionEvent::StartRepair: return "StartRepair";
        case SessionEvent::PatchesGenerated: return "PatchesGenerated";
        case SessionEvent::AllPatchesClassified: return "AllPatchesClassified";
        case SessionEvent::Abort: return "Abort";
    }
    return "?";
}

SessionState session_transition(SessionState state, SessionEvent event) {
    using S = SessionState;
    using E = SessionEvent;

    if (event == E::Abort && state != S::Report && state != S::Aborted) return S::Aborted;

    struct Edge {
        S from;
        E event;
        S to;
    };
    static constexpr Edge kEdges[] = {
        {S::Created, E::StartLocalize, S::Localizing},
        {S::Localizing, E::FaultsLocated, S::Localized},
        {S::Localized, E::StartIntentGen, S::InferringIntents},
        {S::InferringIntents, E::IntentsScored, S::IntentsAccepted},
        {S::IntentsAccepted, E::StartTestGen, S::TestGen},
        {S::TestGen, E::TestsPrioritized, S::TestsReady},
        {S::TestsReady, E::StartRepair, S::Patching},
        {S::Patching, E::PatchesGenerated, S::Validate},
        {S::Validate, E::AllPatchesClassified, S::Report},
    };
    for (const auto& edge : kEdges) {
        if (edge.from == state && edge.event == event) return edge.to;
    }
    throw Error(ErrorKind::Protocol, "event " + std::string(to_string(event)) + " is illegal in state " +
                                         std::string(to_string(state)));
}

Ratio adversarial_threshold(int k) {
    if (k < 2) throw Error(ErrorKind::InvalidConfiguration, "intent count must be at least 2, got " + std::to_string(k));
    return Ratio{1, k};
}

const ProgramIntent* SessionReport::find_intent(std::string_view id) const {
    auto it = std::find_if(intents.begin(), intents.end(), [&](const ProgramIntent& i) { return i.id == id; });
    return it == intents.end() ? nullptr : &*it;
}

const IntentTests* SessionReport::tests_for(std::string_view intent_id) const {
    auto it = std::find_if(tests.begin(), tests.end(), [&](const IntentTests& t) { return t.intent_id == intent_id; });
    return it == tests.end() ? nullptr : &*it;
}

Patch* SessionReport::find_patch(std::string_view id) {
    auto it = std::find_if(patches.begin(), patches.end(), [&](const Patch& p) { return p.id == id; });
    return it == patches.end() ? nullptr : &*it;
}

}  // namespace intentrepair
