#include "pairdecomp/error.hpp"

namespace pairdecomp {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthTooShort: return "LengthTooShort";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::UnequalSupports: return "UnequalSupports";
    case ErrorCode::BothZero: return "BothZero";
    case ErrorCode::NotMajorized: return "NotMajorized";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NotADecomposition: return "NotADecomposition";
    case ErrorCode::MTooLarge: return "MTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace pairdecomp
