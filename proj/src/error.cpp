#include "hypext/error.hpp"

namespace hypext {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::TooFewVertices: return "TooFewVertices";
        case ErrorCode::DegenerateEdge: return "DegenerateEdge";
        case ErrorCode::SelfIntersecting: return "SelfIntersecting";
        case ErrorCode::PointOutside: return "PointOutside";
        case ErrorCode::DisconnectedAtResolution: return "DisconnectedAtResolution";
        case ErrorCode::InvalidNormalization: return "InvalidNormalization";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::CrowdingOverflow: return "CrowdingOverflow";
        case ErrorCode::OutsideDisk: return "OutsideDisk";
        case ErrorCode::CoincidentEndpoints: return "CoincidentEndpoints";
        case ErrorCode::PreimageNotFound: return "PreimageNotFound";
        case ErrorCode::NegativeArgument: return "NegativeArgument";
        case ErrorCode::NotIncreasing: return "NotIncreasing";
        case ErrorCode::QuadratureBudgetExceeded: return "QuadratureBudgetExceeded";
        case ErrorCode::NoValidN0: return "NoValidN0";
        case ErrorCode::NonMonotoneParametrization: return "NonMonotoneParametrization";
        case ErrorCode::GapTooWide: return "GapTooWide";
        case ErrorCode::TailDivergent: return "TailDivergent";
        case ErrorCode::TailConvergent: return "TailConvergent";
        case ErrorCode::CellDegenerate: return "CellDegenerate";
        case ErrorCode::TruncationTooShort: return "TruncationTooShort";
        case ErrorCode::GroupExhausted: return "GroupExhausted";
        case ErrorCode::GuardViolated: return "GuardViolated";
        case ErrorCode::InsufficientDepth: return "InsufficientDepth";
        case ErrorCode::NonPositiveTerm: return "NonPositiveTerm";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::OverlapDetected: return "OverlapDetected";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace hypext
