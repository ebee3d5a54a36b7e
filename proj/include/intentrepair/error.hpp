#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace intentrepair {

enum class ErrorKind {
    InvalidConfiguration,
    InvalidInput,
    Protocol,
    Parse,
    ReplayMiss,
    Gateway,
    Transport,
    BudgetExhausted,
    Environment,
    Localization,
    IntentGeneration,
    TestGeneration,
    ScoreUndefined,
    Verdict,
    Io,
};

std::string_view to_string(ErrorKind kind);

/// Error raised by every module. The kind is the stable part; the message is
/// for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Structured-response parse failure. Carries the raw text so the caller can
/// re-prompt or surface it in a report.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::string raw)
        : Error(ErrorKind::Parse, message), raw_(std::move(raw)) {}

    const std::string& raw() const noexcept { return raw_; }

private:
    std::string raw_;
};

}  // namespace intentrepair
