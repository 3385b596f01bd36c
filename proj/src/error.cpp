#include "probtree/error.hpp"

namespace probtree {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyTable: return "EmptyTable";
    case ErrorCode::DuplicateColumnName: return "DuplicateColumnName";
    case ErrorCode::RaggedRow: return "RaggedRow";
    case ErrorCode::RecordTooLong: return "RecordTooLong";
    case ErrorCode::InvalidCount: return "InvalidCount";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::MissingValue: return "MissingValue";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::NonNumericValue: return "NonNumericValue";
    case ErrorCode::ConstantColumn: return "ConstantColumn";
    case ErrorCode::InvalidBinCount: return "InvalidBinCount";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ColumnMismatch: return "ColumnMismatch";
    case ErrorCode::InvalidSizes: return "InvalidSizes";
    case ErrorCode::InvalidColumn: return "InvalidColumn";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace probtree
