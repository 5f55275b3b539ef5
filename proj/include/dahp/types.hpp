// types.hpp - shared identifiers, weights and the library error type
#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dahp {

using VertexId = std::uint32_t;
using NetId = std::uint32_t;
using BlockId = std::int32_t;
using Weight = double;

inline constexpr BlockId kInvalidBlock = -1;

enum class ErrorCode {
  DuplicatePin,
  EmptyHeadOrTail,
  NonPositiveWeight,
  IdOutOfRange,
  RoleConflict,
  VertexDisabled,
  OutOfOrderUncontract,
  CyclicInput,
  PartitionIncomplete,
  Malformed,
  NoTarget,
  IncompatibleParents,
  TimeBudgetTooSmall,
  KTooLargeForInstance,
  MissingCell,
  TooLarge,
  ExternalFileMissing,
  VerificationFailed,
  InvalidArgument,
};

std::string_view toString(ErrorCode code);

// All recoverable failures of the library surface as this exception.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(toString(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse errors carry the 1-based line number of the offending input line.
class MalformedInput : public Error {
 public:
  MalformedInput(std::size_t line, const std::string& reason)
      : Error(ErrorCode::Malformed, "line " + std::to_string(line) + ": " + reason),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace dahp
