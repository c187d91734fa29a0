#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace gcf {

enum class ErrorCode {
  ParseError,
  DimensionMismatch,
  NotSymmetric,
  NotPositiveDefinite,
  IndexOutOfRange,
  ShiftDirectionInvalid,
  OmegaOutOfRange,
  IterationCapExceeded,
  UnsupportedDimension,
  InexactDivision,
  InvalidStart,
  StateNotReduced,
  NonAffineMinor,
  NonPositiveT,
  NonPositiveEpsilon,
  NotUnimodular,
  ConfigInvalid,
  InsufficientTrace,
  BoundTooSmall,
  IOFailure,
  InvariantViolation,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library. `index()` carries the offending
/// position when there is one (e.g. the size of the first non-positive
/// leading minor).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace gcf
