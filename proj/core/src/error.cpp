#include "qcopula/error.hpp"

namespace qcopula {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::SingularTransform: return "SingularTransform";
    case ErrorCode::InfiniteDistance: return "InfiniteDistance";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::SingularIntermediate: return "SingularIntermediate";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::PrecopulaCheckFailed: return "PrecopulaCheckFailed";
    case ErrorCode::NotPrecopula: return "NotPrecopula";
    case ErrorCode::NonPositiveEntry: return "NonPositiveEntry";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace qcopula
