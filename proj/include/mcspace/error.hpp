#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mcspace {

enum class ErrorKind {
    NotACocycle,
    DimensionMismatch,
    NotNilpotent,
    NotAdapted,
    DegreeMismatch,
    NotMaurerCartan,
    OracleFailure,
    PreconditionFailed,
    LevelZero,
    LevelMismatch,
    FacesNotZero,
    IncompatibleHorn,
    NotACycle,
    NotNormalized,
    NotNonNegativelyGraded,
    ParseError,
    ValidationError,
    UnknownCommand,
    Internal,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

} // namespace mcspace
