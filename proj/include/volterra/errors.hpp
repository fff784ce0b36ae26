#ifndef VOLTERRA_ERRORS_HPP
#define VOLTERRA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace volterra {

enum class ErrorCode {
    BreakpointOrder,
    NonzeroF0,
    DegenerateDiagonal,
    NoFeasibleN,
    MultiplicityOverflow,
    DegreeCapExceeded,
    NotDifferentiableAtZero,
    NonpositiveT,
    InconsistentSystem,
    AsymptoticInconsistent,
    NoConvergence,
    ResidualLogTerms,
    OutOfDomain,
    BadInput,
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::BreakpointOrder:         return "BreakpointOrder";
        case ErrorCode::NonzeroF0:               return "NonzeroF0";
        case ErrorCode::DegenerateDiagonal:      return "DegenerateDiagonal";
        case ErrorCode::NoFeasibleN:             return "NoFeasibleN";
        case ErrorCode::MultiplicityOverflow:    return "MultiplicityOverflow";
        case ErrorCode::DegreeCapExceeded:       return "DegreeCapExceeded";
        case ErrorCode::NotDifferentiableAtZero: return "NotDifferentiableAtZero";
        case ErrorCode::NonpositiveT:            return "NonpositiveT";
        case ErrorCode::InconsistentSystem:      return "InconsistentSystem";
        case ErrorCode::AsymptoticInconsistent:  return "AsymptoticInconsistent";
        case ErrorCode::NoConvergence:           return "NoConvergence";
        case ErrorCode::ResidualLogTerms:        return "ResidualLogTerms";
        case ErrorCode::OutOfDomain:             return "OutOfDomain";
        case ErrorCode::BadInput:                return "BadInput";
    }
    return "Unknown";
}

// All library failures surface as this exception. code() is stable and
// machine-parsable; what() names the violated invariant.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code),
          message_(message) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& message() const noexcept { return message_; }

private:
    ErrorCode code_;
    std::string message_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace volterra

#endif  // VOLTERRA_ERRORS_HPP
