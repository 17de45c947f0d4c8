#pragma once

#include <stdexcept>
#include <string>

namespace pairdecomp {

enum class ErrorCode {
  NotHermitian,
  NoConvergence,
  NotPSD,
  Singular,
  DimensionMismatch,
  LengthTooShort,
  TooShort,
  UnequalSupports,
  BothZero,
  NotMajorized,
  NegativeEntry,
  NotADecomposition,
  MTooLarge,
  InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pairdecomp
