#include "tcb/error.hpp"

namespace tcb {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::AntipodalInput: return "AntipodalInput";
    case ErrorCode::AtPole: return "AtPole";
    case ErrorCode::EvenDimension: return "EvenDimension";
    case ErrorCode::EvenN: return "EvenN";
    case ErrorCode::OddN: return "OddN";
    case ErrorCode::EvenM: return "EvenM";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DiscontinuousJoin: return "DiscontinuousJoin";
    case ErrorCode::InvalidPoint: return "InvalidPoint";
    case ErrorCode::MissingSteenrod: return "MissingSteenrod";
    case ErrorCode::UnsupportedSpace: return "UnsupportedSpace";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BadInput: return "BadInput";
    case ErrorCode::RegistryConflict: return "RegistryConflict";
    }
    return "Error";
}

} // namespace tcb
