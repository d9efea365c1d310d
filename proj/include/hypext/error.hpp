#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypext {

enum class ErrorCode {
    TooFewVertices,
    DegenerateEdge,
    SelfIntersecting,
    PointOutside,
    DisconnectedAtResolution,
    InvalidNormalization,
    NonConvergence,
    CrowdingOverflow,
    OutsideDisk,
    CoincidentEndpoints,
    PreimageNotFound,
    NegativeArgument,
    NotIncreasing,
    QuadratureBudgetExceeded,
    NoValidN0,
    NonMonotoneParametrization,
    GapTooWide,
    TailDivergent,
    TailConvergent,
    CellDegenerate,
    TruncationTooShort,
    GroupExhausted,
    GuardViolated,
    InsufficientDepth,
    NonPositiveTerm,
    BudgetExceeded,
    OverlapDetected,
    InvalidArgument,
    Io,
};

std::string_view to_string(ErrorCode code);

/// Error raised by every module; `code()` carries the machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hypext
