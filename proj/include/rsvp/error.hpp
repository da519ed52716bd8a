#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rsvp {

enum class ErrorCode {
  EmptyInput,
  DuplicateHeader,
  RowArityMismatch,
  TypeConflict,
  SeriesLengthMismatch,
  RunLimitExceeded,
  MixedTypes,
  AllEmpty,
  UnknownDimension,
  InvalidEncoding,
  NotApplicable,
  NoSmd,
  OutOfRange,
  TooManyTasks,
  NotRecommended,
  NonQuantitativeFilter,
  InvalidFilter,
  DegenerateExtent,
  EmptySelection,
  UnknownRun,
  NotEditMode,
  UnknownView,
  IncompatibleCell,
  InvalidRect,
  InvalidPatch,
  InvalidArgument,
  UnknownSession,
  NotFound,
};

std::string_view to_string(ErrorCode code);

/// Every engine failure surfaces as an Error carrying a stable code.
/// The message is human-readable; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rsvp
