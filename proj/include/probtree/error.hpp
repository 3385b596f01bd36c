#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace probtree {

enum class ErrorCode {
  EmptyTable,
  DuplicateColumnName,
  RaggedRow,
  RecordTooLong,
  InvalidCount,
  FileNotFound,
  MalformedHeader,
  MissingValue,
  UnknownColumn,
  NonNumericValue,
  ConstantColumn,
  InvalidBinCount,
  ParseError,
  VersionMismatch,
  InvariantViolation,
  EmptyInput,
  ColumnMismatch,
  InvalidSizes,
  InvalidColumn,
  IoError,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type; `code()` identifies the
// contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace probtree
