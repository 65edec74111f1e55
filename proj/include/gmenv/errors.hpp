#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gmenv {

/// Coarse grouping of failures; the CLI maps these to exit codes.
enum class ErrorCategory {
    Argument,    // malformed or out-of-contract inputs
    Infeasible,  // inputs valid but the requested object does not exist
    Io,          // unreadable or malformed input streams
};

class Error : public std::runtime_error {
public:
    Error(const char* kind, ErrorCategory category, std::string message,
          std::int64_t line = 0)
        : std::runtime_error(std::move(message)), kind_(kind),
          category_(category), line_(line) {}

    /// Stable machine-readable name, e.g. "NoPositiveSequence".
    const char* kind() const noexcept { return kind_; }
    ErrorCategory category() const noexcept { return category_; }
    /// 1-based input line for stream errors; 0 when not applicable.
    std::int64_t line() const noexcept { return line_; }

private:
    const char* kind_;
    ErrorCategory category_;
    std::int64_t line_;
};

struct InvalidLength : Error {
    explicit InvalidLength(std::string message)
        : Error("InvalidLength", ErrorCategory::Argument, std::move(message)) {}
};

struct InvalidProfile : Error {
    explicit InvalidProfile(std::string message)
        : Error("InvalidProfile", ErrorCategory::Argument, std::move(message)) {}
};

struct InvalidTypeIndex : Error {
    explicit InvalidTypeIndex(std::string message)
        : Error("InvalidTypeIndex", ErrorCategory::Argument, std::move(message)) {}
};

struct InvalidRobustParams : Error {
    explicit InvalidRobustParams(std::string message)
        : Error("InvalidRobustParams", ErrorCategory::Argument,
                std::move(message)) {}
};

struct OutOfDomain : Error {
    explicit OutOfDomain(std::string message)
        : Error("OutOfDomain", ErrorCategory::Argument, std::move(message)) {}
};

struct NonPositiveInput : Error {
    explicit NonPositiveInput(std::string message)
        : Error("NonPositiveInput", ErrorCategory::Argument,
                std::move(message)) {}
};

struct NoPositiveSequence : Error {
    explicit NoPositiveSequence(std::string message)
        : Error("NoPositiveSequence", ErrorCategory::Infeasible,
                std::move(message)) {}
};

struct InfimumNotAttained : Error {
    explicit InfimumNotAttained(std::string message)
        : Error("InfimumNotAttained", ErrorCategory::Infeasible,
                std::move(message)) {}
};

struct DegenerateLadder : Error {
    explicit DegenerateLadder(std::string message)
        : Error("DegenerateLadder", ErrorCategory::Infeasible,
                std::move(message)) {}
};

struct ParseError : Error {
    ParseError(std::string message, std::int64_t line)
        : Error("ParseError", ErrorCategory::Io, std::move(message), line) {}
};

struct ImpossibleReturn : Error {
    ImpossibleReturn(std::string message, std::int64_t line)
        : Error("ImpossibleReturn", ErrorCategory::Io, std::move(message),
                line) {}
};

struct IoError : Error {
    explicit IoError(std::string message)
        : Error("IoError", ErrorCategory::Io, std::move(message)) {}
};

}  // namespace gmenv
