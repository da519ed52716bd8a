#include "rsvp/error.hpp"

namespace rsvp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DuplicateHeader: return "DuplicateHeader";
    case ErrorCode::RowArityMismatch: return "RowArityMismatch";
    case ErrorCode::TypeConflict: return "TypeConflict";
    case ErrorCode::SeriesLengthMismatch: return "SeriesLengthMismatch";
    case ErrorCode::RunLimitExceeded: return "RunLimitExceeded";
    case ErrorCode::MixedTypes: return "MixedTypes";
    case ErrorCode::AllEmpty: return "AllEmpty";
    case ErrorCode::UnknownDimension: return "UnknownDimension";
    case ErrorCode::InvalidEncoding: return "InvalidEncoding";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::NoSmd: return "NoSmd";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::TooManyTasks: return "TooManyTasks";
    case ErrorCode::NotRecommended: return "NotRecommended";
    case ErrorCode::NonQuantitativeFilter: return "NonQuantitativeFilter";
    case ErrorCode::InvalidFilter: return "InvalidFilter";
    case ErrorCode::DegenerateExtent: return "DegenerateExtent";
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::UnknownRun: return "UnknownRun";
    case ErrorCode::NotEditMode: return "NotEditMode";
    case ErrorCode::UnknownView: return "UnknownView";
    case ErrorCode::IncompatibleCell: return "IncompatibleCell";
    case ErrorCode::InvalidRect: return "InvalidRect";
    case ErrorCode::InvalidPatch: return "InvalidPatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::NotFound: return "NotFound";
  }
  return "Unknown";
}

}  // namespace rsvp
