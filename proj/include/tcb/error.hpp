#pragma once

#include <stdexcept>
#include <string>

namespace tcb {

// Stable error identifiers. The CLI maps these to exit codes: parse/usage
// problems exit 2, domain errors exit 3, verification failures exit 4.
enum class ErrorCode {
    AntipodalInput,
    AtPole,
    EvenDimension,
    EvenN,
    OddN,
    EvenM,
    OutOfRange,
    DiscontinuousJoin,
    InvalidPoint,
    MissingSteenrod,
    UnsupportedSpace,
    UnknownSuite,
    ParseError,
    BadInput,
    RegistryConflict,
};

[[nodiscard]] const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what_arg)
        : std::runtime_error(what_arg), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, std::string(error_code_name(code)) + ": " + msg);
}

} // namespace tcb
