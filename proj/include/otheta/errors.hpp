#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace otheta {

enum class ErrorKind {
    InvalidArgument,
    InvalidConeCount,
    DuplicatePoint,
    BoundaryDegeneracy,
    GeneralPositionViolation,
    InvalidOrder,
    AmbiguousClosest,
    InvalidVertex,
    TooLarge,
    WrongFamily,
    DegenerateAngle,
    NotATower,
    InvalidFamily,
    BadEps,
    BetaRealizationFailure,
    ResampleBudgetExceeded,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::InvalidConeCount: return "InvalidConeCount";
        case ErrorKind::DuplicatePoint: return "DuplicatePoint";
        case ErrorKind::BoundaryDegeneracy: return "BoundaryDegeneracy";
        case ErrorKind::GeneralPositionViolation: return "GeneralPositionViolation";
        case ErrorKind::InvalidOrder: return "InvalidOrder";
        case ErrorKind::AmbiguousClosest: return "AmbiguousClosest";
        case ErrorKind::InvalidVertex: return "InvalidVertex";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::WrongFamily: return "WrongFamily";
        case ErrorKind::DegenerateAngle: return "DegenerateAngle";
        case ErrorKind::NotATower: return "NotATower";
        case ErrorKind::InvalidFamily: return "InvalidFamily";
        case ErrorKind::BadEps: return "BadEps";
        case ErrorKind::BetaRealizationFailure: return "BetaRealizationFailure";
        case ErrorKind::ResampleBudgetExceeded: return "ResampleBudgetExceeded";
    }
    return "Unknown";
}

/// Base exception for every failure raised by the library. The kind is
/// stable and is what callers (and the CLI exit-code mapping) switch on.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace otheta
